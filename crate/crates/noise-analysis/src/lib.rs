//! Noise sensitivity of BosonSampling at desk scale: Ornstein-Uhlenbeck
//! noise on input matrices, noisy distribution construction, correlation
//! and total-variation metrics, and Hermite degree-damping checks.

mod error;
mod hermite;
mod metrics;
mod noise;
mod noisy;
mod sweep;

pub use error::{NoiseError, Result};
pub use hermite::{hermite, hermite_damping_check, DampingEstimate, MAX_DEGREE};
pub use metrics::{distribution_correlation, pearson, total_variation, tv_vectors};
pub use noise::{apply_matrix_noise, NoiseLevel};
pub use noisy::{noisy_boson_distribution, NoisyBoson, NoisyBosonOptions};
pub use sweep::{
    sensitivity_sweep, EpsilonSpec, InputEnsemble, ModeRule, SensitivityCurve, SweepCell,
    SweepConfig,
};
