use matrix_core::MatrixError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplingError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),

    #[error("{what}: {count} outcomes exceed the enumeration cap {cap}")]
    EnumerationCap { what: &'static str, count: u128, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical contract violated: {0}")]
    NumericalContract(String),
}

pub type Result<T> = std::result::Result<T, SamplingError>;
