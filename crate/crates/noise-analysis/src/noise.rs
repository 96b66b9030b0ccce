//! Ornstein-Uhlenbeck resampling of matrix entries.
//!
//! The noise operator at level epsilon replaces M by
//! `M' = sqrt(1 - eps) * M + sqrt(eps) * G` with G a fresh standard complex
//! Gaussian matrix. For unit-variance Gaussian input ensembles this is
//! stationary: M' is marginally identical to M, with per-entry correlation
//! `rho = sqrt(1 - eps)`, and it damps degree-k Hermite components by rho^k.

use matrix_core::{gaussian_matrix, ComplexMatrix, SeededRng};
use serde::{Deserialize, Serialize};

use crate::error::{NoiseError, Result};

/// Noise level epsilon in [0, 1]; rho = sqrt(1 - eps) is the retained
/// per-coordinate correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NoiseLevel(f64);

impl NoiseLevel {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(NoiseError::InvalidArgument(format!(
                "noise level must lie in [0, 1], got {epsilon}"
            )));
        }
        Ok(Self(epsilon))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn rho(self) -> f64 {
        (1.0 - self.0).sqrt()
    }
}

/// Apply one Ornstein-Uhlenbeck resampling step to every entry.
/// At eps = 0 the input is returned unchanged, bit for bit.
pub fn apply_matrix_noise(
    matrix: &ComplexMatrix,
    eps: NoiseLevel,
    rng: &mut SeededRng,
) -> ComplexMatrix {
    if eps.value() == 0.0 {
        return matrix.clone();
    }
    let fresh = gaussian_matrix(matrix.rows(), matrix.cols(), rng);
    mix_noise(matrix, eps, &fresh, 1.0)
}

/// `sqrt(1-eps) * M + sign * sqrt(eps) * G`. The negated variant serves
/// antithetic averaging; G and -G are identically distributed.
pub(crate) fn mix_noise(
    matrix: &ComplexMatrix,
    eps: NoiseLevel,
    fresh: &ComplexMatrix,
    sign: f64,
) -> ComplexMatrix {
    let keep = eps.rho();
    let mix = sign * eps.value().sqrt();
    let entries = matrix
        .entries()
        .iter()
        .zip(fresh.entries())
        .map(|(old, new)| old * keep + new * mix)
        .collect();
    ComplexMatrix::from_entries(matrix.rows(), matrix.cols(), entries)
        .expect("noisy entries are finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use matrix_core::Complex64;

    #[test]
    fn rejects_out_of_range() {
        assert!(NoiseLevel::new(-0.1).is_err());
        assert!(NoiseLevel::new(1.5).is_err());
        assert!(NoiseLevel::new(0.0).is_ok());
        assert!(NoiseLevel::new(1.0).is_ok());
    }

    #[test]
    fn zero_noise_is_identity() {
        let mut rng = SeededRng::from_seed(5);
        let m = gaussian_matrix(4, 7, &mut rng);
        let out = apply_matrix_noise(&m, NoiseLevel::new(0.0).unwrap(), &mut rng);
        assert_eq!(out, m);
    }

    #[test]
    fn full_noise_decorrelates() {
        let mut rng = SeededRng::from_seed(6);
        let m = gaussian_matrix(250, 400, &mut rng);
        let out = apply_matrix_noise(&m, NoiseLevel::new(1.0).unwrap(), &mut rng);
        let n = (m.rows() * m.cols()) as f64;
        let corr: Complex64 = m
            .entries()
            .iter()
            .zip(out.entries())
            .map(|(a, b)| b * a.conj())
            .sum::<Complex64>()
            / n;
        assert!(corr.norm() <= 0.02, "residual correlation {}", corr.norm());
    }

    #[test]
    fn half_noise_retains_sqrt_half() {
        let mut rng = SeededRng::from_seed(7);
        let m = gaussian_matrix(250, 400, &mut rng);
        let out = apply_matrix_noise(&m, NoiseLevel::new(0.5).unwrap(), &mut rng);
        let n = (m.rows() * m.cols()) as f64;
        let corr: Complex64 = m
            .entries()
            .iter()
            .zip(out.entries())
            .map(|(a, b)| b * a.conj())
            .sum::<Complex64>()
            / n;
        let expected = 0.5f64.sqrt();
        assert!(
            (corr.re - expected).abs() <= 0.02 && corr.im.abs() <= 0.02,
            "measured correlation {corr}"
        );
    }

    #[test]
    fn marginal_second_moment_preserved() {
        let mut rng = SeededRng::from_seed(8);
        let m = gaussian_matrix(250, 400, &mut rng);
        let out = apply_matrix_noise(&m, NoiseLevel::new(0.3).unwrap(), &mut rng);
        let n = (m.rows() * m.cols()) as f64;
        let second: f64 = out.entries().iter().map(|z| z.norm_sqr()).sum::<f64>() / n;
        assert!((second - 1.0).abs() <= 0.02, "E|entry|^2 = {second}");
    }
}
