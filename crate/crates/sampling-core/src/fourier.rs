//! FourierSampling for Boolean functions on {-1,+1}^n.
//!
//! An input point is encoded as a bit pattern where bit b set means variable
//! b+1 takes the value -1. The Fourier coefficient of an index set S is
//! fhat(S) = 2^-n * sum_x f(x) * prod_{i in S} x_i, computed for all S at
//! once by the fast Walsh-Hadamard transform. For +-1-valued f all
//! intermediate values are dyadic rationals, so Parseval (sum fhat^2 = 1)
//! holds exactly in double precision.

use matrix_core::{ColumnMultiset, SeededRng};

use crate::distribution::{DistributionKind, OutcomeDistribution};
use crate::error::{Result, SamplingError};

pub const MAX_BITS: usize = 20;

/// A Boolean function given by its +-1 truth table, index = bit pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct BooleanFunction {
    bits: usize,
    values: Vec<f64>,
}

impl BooleanFunction {
    pub fn from_values(bits: usize, values: Vec<f64>) -> Result<Self> {
        if bits == 0 || bits > MAX_BITS {
            return Err(SamplingError::InvalidArgument(format!(
                "need 1 <= bits <= {MAX_BITS}, got {bits}"
            )));
        }
        if values.len() != 1 << bits {
            return Err(SamplingError::InvalidArgument(format!(
                "expected {} truth-table entries, got {}",
                1usize << bits,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| **v != 1.0 && **v != -1.0) {
            return Err(SamplingError::InvalidArgument(format!(
                "truth table must be +-1 valued, found {v}"
            )));
        }
        Ok(Self { bits, values })
    }

    /// f(x) = x_{variable}, 1-based.
    pub fn dictator(bits: usize, variable: usize) -> Result<Self> {
        if variable == 0 || variable > bits {
            return Err(SamplingError::InvalidArgument(format!(
                "dictator variable {variable} out of range 1..={bits}"
            )));
        }
        let mask = 1usize << (variable - 1);
        let values = (0..1usize << bits)
            .map(|x| if x & mask != 0 { -1.0 } else { 1.0 })
            .collect();
        Self::from_values(bits, values)
    }

    /// f(x) = x_1 * x_2 * ... * x_n.
    pub fn parity(bits: usize) -> Result<Self> {
        let values = (0..1usize << bits)
            .map(|x: usize| if x.count_ones() % 2 == 1 { -1.0 } else { 1.0 })
            .collect();
        Self::from_values(bits, values)
    }

    /// f(x) = sgn(x_1 + ... + x_n), odd n.
    pub fn majority(bits: usize) -> Result<Self> {
        if bits % 2 == 0 {
            return Err(SamplingError::InvalidArgument(
                "majority needs an odd number of bits".to_string(),
            ));
        }
        let values = (0..1usize << bits)
            .map(|x: usize| {
                // bit set = -1, so minus bits in the majority mean f = -1
                if (x.count_ones() as usize) * 2 > bits {
                    -1.0
                } else {
                    1.0
                }
            })
            .collect();
        Self::from_values(bits, values)
    }

    /// Uniformly random +-1 truth table.
    pub fn random(bits: usize, rng: &mut SeededRng) -> Result<Self> {
        let values = (0..1usize << bits)
            .map(|_| if rng.uniform() < 0.5 { -1.0 } else { 1.0 })
            .collect();
        Self::from_values(bits, values)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// In-place fast Walsh-Hadamard transform (sum form, no scaling).
pub fn walsh_hadamard(values: &mut [f64]) {
    let n = values.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        for block in (0..n).step_by(half * 2) {
            for i in block..block + half {
                let a = values[i];
                let b = values[i + half];
                values[i] = a + b;
                values[i + half] = a - b;
            }
        }
        half *= 2;
    }
}

/// Distribution on index sets S with prob fhat(S)^2, outcomes ordered by
/// set mask (bit b of the mask = variable b+1 in S), encoded as 0/1
/// repetition vectors of length n.
pub fn fourier_distribution(f: &BooleanFunction) -> Result<OutcomeDistribution> {
    let size = 1usize << f.bits;
    let mut coeffs = f.values.clone();
    walsh_hadamard(&mut coeffs);
    let scale = 1.0 / size as f64;
    let probs: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            let fhat = c * scale;
            fhat * fhat
        })
        .collect();
    let outcomes = (0..size)
        .map(|mask| {
            let reps = (0..f.bits)
                .map(|b| usize::from(mask & (1 << b) != 0))
                .collect();
            ColumnMultiset::from_repetitions(reps)
        })
        .collect();
    OutcomeDistribution::new(DistributionKind::Fourier, outcomes, probs)
}
