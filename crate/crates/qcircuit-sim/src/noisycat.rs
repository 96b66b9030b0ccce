//! The noisy-cat inequality: for an entangled pair, error correlation is
//! bounded below by K(r1, r2) times the pair's entanglement entropy.

use serde::{Deserialize, Serialize};

use crate::channel::{error_correlation, CorrelatedNoiseSpec};
use crate::error::{CircuitError, Result};

/// Bound family K(x, y) = min(x, y)^alpha with alpha in (1, 2), so that
/// K(x, y) / min(x, y)^2 grows without bound as the rates go to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoisyCatConfig {
    pub alpha: f64,
}

impl Default for NoisyCatConfig {
    fn default() -> Self {
        Self { alpha: 1.5 }
    }
}

impl NoisyCatConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(CircuitError::InvalidArgument(format!(
                "bound exponent must lie strictly between 1 and 2, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn bound(&self, r1: f64, r2: f64) -> f64 {
        r1.min(r2).powf(self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoisyCatCheck {
    pub correlation: f64,
    pub bound: f64,
    /// correlation - K(r1, r2) * entanglement; the inequality holds when
    /// this is non-negative.
    pub margin: f64,
    pub satisfied: bool,
}

/// Evaluate cor(E1, E2) >= K(r1, r2) * Ent for a measured entanglement and
/// a correlated noise table.
pub fn noisy_cat_check(
    entanglement: f64,
    spec: &CorrelatedNoiseSpec,
    config: &NoisyCatConfig,
) -> Result<NoisyCatCheck> {
    if !(0.0..=1.0).contains(&entanglement) {
        return Err(CircuitError::InvalidArgument(format!(
            "pair entanglement must lie in [0, 1], got {entanglement}"
        )));
    }
    let correlation = error_correlation(spec)?;
    let bound = config.bound(spec.r1(), spec.r2()) * entanglement;
    let margin = correlation - bound;
    Ok(NoisyCatCheck {
        correlation,
        bound,
        margin,
        satisfied: margin >= 0.0,
    })
}
