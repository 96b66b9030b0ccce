//! Experiment configuration: one JSON document per run,
//! `{"kind": ..., "parameters": {...}, "seed": u64, "output_dir": path}`.

use std::path::{Path, PathBuf};

use noise_analysis::SweepConfig;
use qcircuit_sim::NoiseModel;
use serde::{Deserialize, Serialize};

use crate::builtin;
use crate::error::Violation;

pub const ENUMERATION_CAP: u64 = sampling_core::ENUMERATION_CAP;
pub const MAX_TRAJECTORY_QUBITS: usize = qcircuit_sim::MAX_PURE_QUBITS;
pub const MAX_DENSITY_QUBITS: usize = qcircuit_sim::MAX_DENSITY_QUBITS;
pub const MAX_FOURIER_BITS: usize = sampling_core::MAX_BITS;
pub const MAX_HERMITE_DEGREE: usize = noise_analysis::MAX_DEGREE;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub experiment: ExperimentSpec,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, crate::error::HarnessError> {
        serde_json::from_str(text).map_err(|e| {
            crate::error::HarnessError::Validation(vec![Violation {
                field: "config".to_string(),
                constraint: format!("not parseable: {e}"),
            }])
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn kind_name(&self) -> &'static str {
        self.experiment.kind_name()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameters", rename_all = "kebab-case")]
pub enum ExperimentSpec {
    BosonExact(SampleParams),
    FermionExact(SampleParams),
    Fourier(FourierParams),
    NoiseSweep(SweepConfig),
    HermiteCheck(HermiteParams),
    CircuitRun(CircuitRunParams),
    NoisyCat(NoisyCatParams),
    Smoothing(SmoothingParams),
    Fluctuation(FluctuationParams),
}

impl ExperimentSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ExperimentSpec::BosonExact(_) => "boson-exact",
            ExperimentSpec::FermionExact(_) => "fermion-exact",
            ExperimentSpec::Fourier(_) => "fourier",
            ExperimentSpec::NoiseSweep(_) => "noise-sweep",
            ExperimentSpec::HermiteCheck(_) => "hermite-check",
            ExperimentSpec::CircuitRun(_) => "circuit-run",
            ExperimentSpec::NoisyCat(_) => "noisy-cat",
            ExperimentSpec::Smoothing(_) => "smoothing",
            ExperimentSpec::Fluctuation(_) => "fluctuation",
        }
    }
}

/// Where an input matrix comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixSource {
    /// JSON file in the shared {rows, cols, entries} format.
    File(PathBuf),
    /// A named built-in, e.g. "demo-2x3".
    Builtin(String),
    /// Freshly drawn from an ensemble.
    Ensemble {
        ensemble: noise_analysis::InputEnsemble,
        n: usize,
        m: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleParams {
    pub matrix: MatrixSource,
    /// Additionally draw this many samples from the exact distribution.
    #[serde(default)]
    pub draws: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourierFunction {
    Dictator { variable: usize },
    Parity,
    Majority,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierParams {
    pub bits: usize,
    pub function: FourierFunction,
    #[serde(default)]
    pub draws: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermiteParams {
    pub degrees: Vec<usize>,
    pub epsilon: f64,
    pub mc_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircuitSource {
    File(PathBuf),
    /// "bell" or "ghz-<n>".
    Builtin(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitRunParams {
    pub circuit: CircuitSource,
    #[serde(default)]
    pub n_qubits: Option<usize>,
    pub noise: NoiseModel,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoisyCatParams {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
    /// Bound exponent; default 1.5.
    #[serde(default)]
    pub alpha: Option<f64>,
    /// Measured pair entanglement. When absent it is computed from the
    /// built-in cat state, i.e. 1 bit.
    #[serde(default)]
    pub entanglement: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothingParams {
    pub circuit: CircuitSource,
    #[serde(default)]
    pub n_qubits: Option<usize>,
    /// Per-step depolarizing rate; step t's raw channel acts on qubit
    /// t mod n.
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluctuationParams {
    pub model: NoiseModel,
    pub n_values: Vec<usize>,
    pub trials: usize,
}

// ---- validation ----

/// Check every cap and range before any compute starts.
pub fn validate(config: &ExperimentConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |field: &str, constraint: String| {
        out.push(Violation {
            field: field.to_string(),
            constraint,
        })
    };

    match &config.experiment {
        ExperimentSpec::BosonExact(p) | ExperimentSpec::FermionExact(p) => {
            let boson = matches!(config.experiment, ExperimentSpec::BosonExact(_));
            match matrix_dims(&p.matrix, &mut push) {
                Some((n, m)) if n >= 1 && m >= n => {
                    let count = if boson {
                        sampling_core::binomial((m + n - 1) as u64, n as u64)
                    } else {
                        sampling_core::binomial(m as u64, n as u64)
                    };
                    if count > ENUMERATION_CAP as u128 {
                        push(
                            "matrix",
                            format!("enumeration cap: {count} outcomes exceed {ENUMERATION_CAP}"),
                        );
                    }
                }
                Some((n, m)) => push("matrix", format!("need 1 <= n <= m, got n={n}, m={m}")),
                None => {}
            }
        }
        ExperimentSpec::Fourier(p) => {
            if p.bits == 0 || p.bits > MAX_FOURIER_BITS {
                push(
                    "bits",
                    format!("must lie in 1..={MAX_FOURIER_BITS}, got {}", p.bits),
                );
            }
            if let FourierFunction::Dictator { variable } = p.function {
                if variable == 0 || variable > p.bits {
                    push("function.variable", format!("out of range 1..={}", p.bits));
                }
            }
            if p.function == FourierFunction::Majority && p.bits % 2 == 0 {
                push("function", "majority needs an odd bit count".to_string());
            }
        }
        ExperimentSpec::NoiseSweep(sweep) => {
            if sweep.n_values.is_empty() {
                push("n_values", "must not be empty".to_string());
            }
            if sweep.inputs_per_cell == 0 {
                push("inputs_per_cell", "must be positive".to_string());
            }
            if sweep.mc_samples < 100 {
                push("mc_samples", "noisy averaging needs at least 100".to_string());
            }
            for &n in &sweep.n_values {
                let m = sweep.mode_rule.modes(n);
                let count = sampling_core::binomial((m + n - 1) as u64, n as u64);
                if count > ENUMERATION_CAP as u128 {
                    push(
                        "n_values",
                        format!("enumeration cap: n={n}, m={m} gives {count} outcomes"),
                    );
                }
                for eps in sweep.epsilons.epsilons_for(n) {
                    if !(0.0..=1.0).contains(&eps) {
                        push("epsilons", format!("epsilon range: {eps} outside [0, 1]"));
                    }
                }
            }
        }
        ExperimentSpec::HermiteCheck(p) => {
            for &k in &p.degrees {
                if k > MAX_HERMITE_DEGREE {
                    push(
                        "degrees",
                        format!("degree {k} exceeds cap {MAX_HERMITE_DEGREE}"),
                    );
                }
            }
            if !(0.0..=1.0).contains(&p.epsilon) {
                push("epsilon", format!("epsilon range: {} outside [0, 1]", p.epsilon));
            }
            if p.mc_samples < 2 {
                push("mc_samples", "need at least 2".to_string());
            }
        }
        ExperimentSpec::CircuitRun(p) => {
            if let Some(n) = circuit_qubits(&p.circuit, p.n_qubits, &mut push) {
                if n > MAX_TRAJECTORY_QUBITS {
                    push(
                        "circuit",
                        format!("{n} qubits exceed the trajectory cap {MAX_TRAJECTORY_QUBITS}"),
                    );
                }
            }
            if p.trials == 0 {
                push("trials", "must be positive".to_string());
            }
            validate_noise_model(&p.noise, &mut push);
        }
        ExperimentSpec::NoisyCat(p) => {
            let sum = p.p00 + p.p01 + p.p10 + p.p11;
            if [p.p00, p.p01, p.p10, p.p11]
                .iter()
                .any(|q| !(0.0..=1.0).contains(q))
                || (sum - 1.0).abs() > 1e-9
            {
                push(
                    "p00..p11",
                    format!("must be probabilities summing to 1, got sum {sum}"),
                );
            }
            if let Some(alpha) = p.alpha {
                if !(alpha > 1.0 && alpha < 2.0) {
                    push("alpha", format!("must lie strictly in (1, 2), got {alpha}"));
                }
            }
            if let Some(ent) = p.entanglement {
                if !(0.0..=1.0).contains(&ent) {
                    push("entanglement", format!("must lie in [0, 1], got {ent}"));
                }
            }
        }
        ExperimentSpec::Smoothing(p) => {
            if let Some(n) = circuit_qubits(&p.circuit, p.n_qubits, &mut push) {
                if n > MAX_DENSITY_QUBITS {
                    push(
                        "circuit",
                        format!("{n} qubits exceed the density cap {MAX_DENSITY_QUBITS}"),
                    );
                }
            }
            if !(0.0..=1.0).contains(&p.rate) {
                push("rate", format!("must lie in [0, 1], got {}", p.rate));
            }
        }
        ExperimentSpec::Fluctuation(p) => {
            if p.n_values.is_empty() || p.n_values.windows(2).any(|w| w[0] >= w[1]) {
                push("n_values", "must be ascending and non-empty".to_string());
            }
            if p.trials < 2 {
                push("trials", "need at least 2".to_string());
            }
            validate_noise_model(&p.model, &mut push);
        }
    }
    out
}

fn validate_noise_model(model: &NoiseModel, push: &mut impl FnMut(&str, String)) {
    let p = model.rate();
    if !(0.0..=1.0).contains(&p) {
        push("noise.p", format!("must lie in [0, 1], got {p}"));
    }
    if let NoiseModel::PairwiseCorrelated { correlation, p } = model {
        if !(0.0..1.0).contains(correlation) {
            push(
                "noise.correlation",
                format!("must lie in [0, 1), got {correlation}"),
            );
        }
        if *p <= 0.0 || *p >= 1.0 {
            push("noise.p", "thresholded model needs 0 < p < 1".to_string());
        }
    }
}

/// Resolve the dimensions of a matrix source, reporting missing or
/// unparseable files as violations.
fn matrix_dims(
    source: &MatrixSource,
    push: &mut impl FnMut(&str, String),
) -> Option<(usize, usize)> {
    match source {
        MatrixSource::Ensemble { n, m, .. } => Some((*n, *m)),
        MatrixSource::Builtin(name) => match builtin::matrix(name) {
            Ok(m) => Some((m.rows(), m.cols())),
            Err(_) => {
                push("matrix.builtin", format!("unknown built-in {name:?}"));
                None
            }
        },
        MatrixSource::File(path) => match load_matrix_file(path) {
            Ok(m) => Some((m.rows(), m.cols())),
            Err(msg) => {
                push("matrix.file", msg);
                None
            }
        },
    }
}

pub(crate) fn load_matrix_file(path: &Path) -> Result<matrix_core::ComplexMatrix, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn circuit_qubits(
    source: &CircuitSource,
    n_override: Option<usize>,
    push: &mut impl FnMut(&str, String),
) -> Option<usize> {
    match crate::builtin::circuit(source, n_override) {
        Ok(c) => Some(c.n_qubits()),
        Err(msg) => {
            push("circuit", msg.to_string());
            None
        }
    }
}
