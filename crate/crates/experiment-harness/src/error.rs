use matrix_core::MatrixError;
use noise_analysis::NoiseError;
use qcircuit_sim::CircuitError;
use sampling_core::SamplingError;
use serde::Serialize;
use thiserror::Error;

/// One validation failure: the offending field and the violated constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub field: String,
    pub constraint: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.constraint)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration invalid:\n{}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("numerical contract violated: {0}")]
    Numerical(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("  - {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl HarnessError {
    /// Exit codes: 2 validation failure, 3 cap exceeded, 4 numerical
    /// contract violation, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Validation(_) | HarnessError::NotFound(_) => 2,
            HarnessError::CapExceeded(_) => 3,
            HarnessError::Numerical(_) => 4,
            HarnessError::Io(_) => 1,
        }
    }

    fn invalid(field: &str, message: String) -> Self {
        HarnessError::Validation(vec![Violation {
            field: field.to_string(),
            constraint: message,
        }])
    }
}

impl From<MatrixError> for HarnessError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::SizeLimit { .. } => HarnessError::CapExceeded(e.to_string()),
            MatrixError::NonFinite { .. } => HarnessError::Numerical(e.to_string()),
            other => HarnessError::invalid("matrix", other.to_string()),
        }
    }
}

impl From<SamplingError> for HarnessError {
    fn from(e: SamplingError) -> Self {
        match e {
            SamplingError::EnumerationCap { .. } => HarnessError::CapExceeded(e.to_string()),
            SamplingError::NumericalContract(_) => HarnessError::Numerical(e.to_string()),
            SamplingError::Matrix(m) => m.into(),
            other => HarnessError::invalid("sampling", other.to_string()),
        }
    }
}

impl From<NoiseError> for HarnessError {
    fn from(e: NoiseError) -> Self {
        match e {
            NoiseError::Sampling(s) => s.into(),
            NoiseError::Matrix(m) => m.into(),
            NoiseError::DegenerateInput(_) => HarnessError::Numerical(e.to_string()),
            other => HarnessError::invalid("noise", other.to_string()),
        }
    }
}

impl From<CircuitError> for HarnessError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::QubitCap { .. } => HarnessError::CapExceeded(e.to_string()),
            CircuitError::NumericalContract(_) | CircuitError::DegenerateInput(_) => {
                HarnessError::Numerical(e.to_string())
            }
            other => HarnessError::invalid("circuit", other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
