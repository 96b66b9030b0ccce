//! Noisy BosonSampling: the ideal map averaged over noisy input matrices.

use matrix_core::{gaussian_matrix, orthonormalize_rows, ComplexMatrix, SeededRng};
use rayon::prelude::*;
use sampling_core::{boson_outcomes, boson_probs, DistributionKind, OutcomeDistribution};

use crate::error::{NoiseError, Result};
use crate::noise::{mix_noise, NoiseLevel};

/// Draws per parallel chunk. Chunks are summed internally in draw order and
/// then combined in chunk order, a fixed reduction tree, so the result does
/// not depend on scheduling.
const CHUNK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoisyBosonOptions {
    /// Re-orthonormalize the rows of each noisy draw before sampling, which
    /// restores exact per-draw normalization at the cost of leaving the
    /// Gaussian stationary regime.
    pub reorthonormalize: bool,
    /// Pair each Gaussian draw G with its negation -G. Both are standard
    /// Gaussian, so the average stays unbiased, but the pairing cancels every
    /// odd-degree noise term and cuts the Monte Carlo variance substantially
    /// at small eps.
    pub antithetic: bool,
}

impl Default for NoisyBosonOptions {
    fn default() -> Self {
        Self {
            reorthonormalize: false,
            antithetic: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoisyBoson {
    pub distribution: OutcomeDistribution,
    /// Sum of the averaged probabilities. 1 (within MC error) only when rows
    /// were re-orthonormalized per draw or the input rows are orthonormal.
    pub total_mass: f64,
    pub reorthonormalized: bool,
    pub mc_samples: usize,
}

/// Average of `boson_distribution(apply_matrix_noise(M, eps))` over
/// `mc` Gaussian draws. At eps = 0 this is exactly the ideal distribution.
/// Draw j uses the substream (`"noisy-boson"`, j) of `rng`'s seed, so the
/// result depends only on the seed, never on prior consumption or threading.
pub fn noisy_boson_distribution(
    matrix: &ComplexMatrix,
    eps: NoiseLevel,
    mc: usize,
    rng: &SeededRng,
    options: NoisyBosonOptions,
) -> Result<NoisyBoson> {
    let outcomes = boson_outcomes(matrix.rows(), matrix.cols())?;

    if eps.value() == 0.0 {
        let probs = boson_probs(matrix, &outcomes)?;
        let distribution = OutcomeDistribution::new(DistributionKind::Boson, outcomes, probs)?;
        let total_mass = distribution.total_mass();
        return Ok(NoisyBoson {
            distribution,
            total_mass,
            reorthonormalized: options.reorthonormalize,
            mc_samples: mc,
        });
    }

    if mc < 100 {
        return Err(NoiseError::InvalidArgument(format!(
            "noisy averaging needs mc >= 100, got {mc}"
        )));
    }

    let chunks = mc.div_ceil(CHUNK);
    let chunk_sums: Vec<Result<Vec<f64>>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = vec![0.0f64; outcomes.len()];
            let lo = chunk * CHUNK;
            let hi = ((chunk + 1) * CHUNK).min(mc);
            for draw in lo..hi {
                let (stream_index, sign) = if options.antithetic {
                    (draw / 2, if draw % 2 == 0 { 1.0 } else { -1.0 })
                } else {
                    (draw, 1.0)
                };
                let mut draw_rng = rng.substream("noisy-boson", stream_index as u64);
                let fresh = gaussian_matrix(matrix.rows(), matrix.cols(), &mut draw_rng);
                let mut noisy = mix_noise(matrix, eps, &fresh, sign);
                if options.reorthonormalize {
                    noisy = orthonormalize_rows(&noisy)?;
                }
                let probs = boson_probs(&noisy, &outcomes)?;
                for (a, p) in acc.iter_mut().zip(&probs) {
                    *a += p;
                }
            }
            Ok(acc)
        })
        .collect();

    let mut averaged = vec![0.0f64; outcomes.len()];
    for sums in chunk_sums {
        let sums = sums?;
        for (a, s) in averaged.iter_mut().zip(&sums) {
            *a += s;
        }
    }
    for a in &mut averaged {
        *a /= mc as f64;
    }

    let distribution = OutcomeDistribution::new(DistributionKind::Boson, outcomes, averaged)?;
    let total_mass = distribution.total_mass();
    Ok(NoisyBoson {
        distribution,
        total_mass,
        reorthonormalized: options.reorthonormalize,
        mc_samples: mc,
    })
}
