//! Noise-sensitivity sweeps: correlation between ideal and noisy
//! BosonSampling distributions across boson counts and noise levels.

use matrix_core::{gaussian_matrix, haar_rows, ComplexMatrix, SeededRng};
use rayon::prelude::*;
use sampling_core::{boson_outcomes, boson_probs};
use serde::{Deserialize, Serialize};

use crate::error::{NoiseError, Result};
use crate::metrics::{pearson, tv_vectors};
use crate::noise::NoiseLevel;
use crate::noisy::{noisy_boson_distribution, NoisyBosonOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputEnsemble {
    /// Rows of a Haar-random unitary; distributions normalize exactly.
    HaarRows,
    /// i.i.d. standard complex Gaussian entries, the stationary ensemble of
    /// the noise operator.
    Gaussian,
}

/// How the mode count m scales with the boson count n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeRule {
    /// m = 2n.
    TwiceN,
    /// m = n^2 + n, the desk-scale stand-in for m >> n^2.
    QuadraticPlusN,
}

impl ModeRule {
    pub fn modes(self, n: usize) -> usize {
        match self {
            ModeRule::TwiceN => 2 * n,
            ModeRule::QuadraticPlusN => n * n + n,
        }
    }
}

/// Noise levels for each n: either one shared list, or epsilon = c / n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonSpec {
    List(Vec<f64>),
    ScaledInverseN { coefficient: f64 },
}

impl EpsilonSpec {
    pub fn epsilons_for(&self, n: usize) -> Vec<f64> {
        match self {
            EpsilonSpec::List(values) => values.clone(),
            EpsilonSpec::ScaledInverseN { coefficient } => vec![coefficient / n as f64],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub ensemble: InputEnsemble,
    pub mode_rule: ModeRule,
    pub n_values: Vec<usize>,
    pub epsilons: EpsilonSpec,
    pub inputs_per_cell: usize,
    pub mc_samples: usize,
    pub reorthonormalize: bool,
}

/// One (n, epsilon) cell: correlation and TV averaged over fresh inputs,
/// with the standard error of the mean correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub n: usize,
    pub m: usize,
    pub epsilon: f64,
    pub correlation: f64,
    pub tv: f64,
    pub stderr: f64,
    pub mc_samples: usize,
    pub inputs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityCurve {
    pub cells: Vec<SweepCell>,
}

impl SensitivityCurve {
    pub fn cell(&self, n: usize, epsilon: f64) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.n == n && c.epsilon == epsilon)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,epsilon,correlation,tv,stderr,mc_samples\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.n, c.m, c.epsilon, c.correlation, c.tv, c.stderr, c.mc_samples
            ));
        }
        out
    }
}

/// Sweep every (n, epsilon) cell with fresh input matrices per cell.
/// Input i of cell k draws from substreams ("sweep-input", k * inputs + i)
/// and ("sweep-noise", k * inputs + i) of `rng`'s seed.
pub fn sensitivity_sweep(config: &SweepConfig, rng: &SeededRng) -> Result<SensitivityCurve> {
    if config.inputs_per_cell == 0 {
        return Err(NoiseError::InvalidArgument(
            "inputs_per_cell must be positive".to_string(),
        ));
    }
    let options = NoisyBosonOptions {
        reorthonormalize: config.reorthonormalize,
        ..Default::default()
    };

    let mut cells = Vec::new();
    let mut cell_index = 0u64;
    for &n in &config.n_values {
        let m = config.mode_rule.modes(n);
        for epsilon in config.epsilons.epsilons_for(n) {
            let eps = NoiseLevel::new(epsilon)?;
            let outcomes = boson_outcomes(n, m)?;

            let per_input: Vec<Result<(f64, f64)>> = (0..config.inputs_per_cell)
                .into_par_iter()
                .map(|i| {
                    let flat = cell_index * config.inputs_per_cell as u64 + i as u64;
                    let mut input_rng = rng.substream("sweep-input", flat);
                    let matrix: ComplexMatrix = match config.ensemble {
                        InputEnsemble::HaarRows => haar_rows(n, m, &mut input_rng)?,
                        InputEnsemble::Gaussian => gaussian_matrix(n, m, &mut input_rng),
                    };
                    let ideal = boson_probs(&matrix, &outcomes)?;
                    let noise_anchor = rng.substream("sweep-noise", flat);
                    let noisy = noisy_boson_distribution(
                        &matrix,
                        eps,
                        config.mc_samples,
                        &noise_anchor,
                        options,
                    )?;
                    let correlation = pearson(&ideal, noisy.distribution.probs())?;
                    let ideal_mass: f64 = ideal.iter().sum();
                    let normalized_ideal: Vec<f64> =
                        ideal.iter().map(|p| p / ideal_mass).collect();
                    let tv = tv_vectors(
                        &normalized_ideal,
                        noisy.distribution.normalized()?.probs(),
                    )?;
                    Ok((correlation, tv))
                })
                .collect();

            let mut correlations = Vec::with_capacity(config.inputs_per_cell);
            let mut tvs = Vec::with_capacity(config.inputs_per_cell);
            for r in per_input {
                let (c, t) = r?;
                correlations.push(c);
                tvs.push(t);
            }
            let count = correlations.len() as f64;
            let mean_corr = correlations.iter().sum::<f64>() / count;
            let mean_tv = tvs.iter().sum::<f64>() / count;
            let stderr = if correlations.len() > 1 {
                let var = correlations
                    .iter()
                    .map(|c| (c - mean_corr) * (c - mean_corr))
                    .sum::<f64>()
                    / (count - 1.0);
                (var / count).sqrt()
            } else {
                0.0
            };

            cells.push(SweepCell {
                n,
                m,
                epsilon,
                correlation: mean_corr,
                tv: mean_tv,
                stderr,
                mc_samples: config.mc_samples,
                inputs: config.inputs_per_cell,
            });
            cell_index += 1;
        }
    }
    Ok(SensitivityCurve { cells })
}
