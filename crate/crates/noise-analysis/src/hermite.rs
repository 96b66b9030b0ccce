//! Empirical check of the noise operator's eigenrelation on Hermite
//! polynomials: degree k is damped by exactly rho^k = (1 - eps)^(k/2).

use matrix_core::SeededRng;

use crate::error::{NoiseError, Result};
use crate::noise::NoiseLevel;

pub const MAX_DEGREE: usize = 6;

/// Probabilists' Hermite polynomial He_k (orthogonal under N(0,1)),
/// via the recurrence He_{k+1}(x) = x He_k(x) - k He_{k-1}(x).
pub fn hermite(k: usize, x: f64) -> f64 {
    let mut prev = 1.0; // He_0
    if k == 0 {
        return prev;
    }
    let mut cur = x; // He_1
    for degree in 1..k {
        let next = x * cur - degree as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingEstimate {
    pub degree: usize,
    pub epsilon: f64,
    /// Monte Carlo estimate of E[He_k(x) He_k(y)] / E[He_k(x)^2] for
    /// (x, y) a rho-correlated standard Gaussian pair; equals rho^k.
    pub damping: f64,
    pub stderr: f64,
    pub mc_samples: usize,
}

impl DampingEstimate {
    pub fn expected(&self) -> f64 {
        (1.0 - self.epsilon).powf(self.degree as f64 / 2.0)
    }
}

/// Estimate the degree-k damping factor of the matrix noise operator from
/// `mc` correlated Gaussian pairs drawn from a substream of `rng`.
pub fn hermite_damping_check(
    k: usize,
    eps: NoiseLevel,
    mc: usize,
    rng: &SeededRng,
) -> Result<DampingEstimate> {
    if k > MAX_DEGREE {
        return Err(NoiseError::InvalidArgument(format!(
            "Hermite degree capped at {MAX_DEGREE}, got {k}"
        )));
    }
    if mc < 2 {
        return Err(NoiseError::InvalidArgument(
            "need at least 2 Monte Carlo draws".to_string(),
        ));
    }
    let mut stream = rng.substream("hermite-damping", k as u64);
    let keep = eps.rho();
    let mix = eps.value().sqrt();

    // products a_i = He_k(x) He_k(y), normalizers b_i = He_k(x)^2
    let mut products = Vec::with_capacity(mc);
    let mut normalizers = Vec::with_capacity(mc);
    for _ in 0..mc {
        let x = stream.standard_normal();
        let y = keep * x + mix * stream.standard_normal();
        let hx = hermite(k, x);
        products.push(hx * hermite(k, y));
        normalizers.push(hx * hx);
    }

    let n = mc as f64;
    let mean_a = products.iter().sum::<f64>() / n;
    let mean_b = normalizers.iter().sum::<f64>() / n;
    let ratio = mean_a / mean_b;

    // delta-method error of the ratio of two correlated means
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    let mut cov = 0.0;
    for (a, b) in products.iter().zip(&normalizers) {
        let da = a - mean_a;
        let db = b - mean_b;
        var_a += da * da;
        var_b += db * db;
        cov += da * db;
    }
    var_a /= n - 1.0;
    var_b /= n - 1.0;
    cov /= n - 1.0;
    let ratio_var = (var_a - 2.0 * ratio * cov + ratio * ratio * var_b) / (n * mean_b * mean_b);
    let stderr = ratio_var.max(0.0).sqrt();

    Ok(DampingEstimate {
        degree: k,
        epsilon: eps.value(),
        damping: ratio,
        stderr,
        mc_samples: mc,
    })
}
