//! FermionSampling and BosonSampling distributions by full enumeration.
//!
//! For an n x m matrix with orthonormal rows, the fermion probabilities
//! |det|^2 over n-subsets sum to 1 (Cauchy-Binet) and the boson
//! probabilities |per|^2 / (r_1! ... r_m!) over n-multisets sum to 1.
//! Submatrix kernels are evaluated in parallel; assembly is by outcome
//! index, so results do not depend on scheduling.

use matrix_core::{det_lu, per_ryser, ColumnMultiset, ComplexMatrix};
use rayon::prelude::*;

use crate::distribution::{DistributionKind, OutcomeDistribution};
use crate::enumerate::{multisets, subsets};
use crate::error::Result;

/// Lexicographic n-subset outcomes for an n x m input.
pub fn fermion_outcomes(n: usize, m: usize) -> Result<Vec<ColumnMultiset>> {
    subsets(n, m)
}

/// Lexicographic n-multiset outcomes for an n x m input.
pub fn boson_outcomes(n: usize, m: usize) -> Result<Vec<ColumnMultiset>> {
    multisets(n, m)
}

/// |det(submatrix)|^2 for each outcome, in the given order.
pub fn fermion_probs(matrix: &ComplexMatrix, outcomes: &[ColumnMultiset]) -> Result<Vec<f64>> {
    outcomes
        .par_iter()
        .map(|s| {
            let sub = matrix.submatrix(s)?;
            Ok(det_lu(&sub)?.norm_sqr())
        })
        .collect()
}

/// |per(submatrix)|^2 / (r_1! ... r_m!) for each outcome, in the given order.
pub fn boson_probs(matrix: &ComplexMatrix, outcomes: &[ColumnMultiset]) -> Result<Vec<f64>> {
    outcomes
        .par_iter()
        .map(|s| {
            let sub = matrix.submatrix(s)?;
            Ok(per_ryser(&sub)?.norm_sqr() / s.repetition_factorial())
        })
        .collect()
}

/// The exact FermionSampling distribution of `matrix`.
pub fn fermion_distribution(matrix: &ComplexMatrix) -> Result<OutcomeDistribution> {
    let outcomes = fermion_outcomes(matrix.rows(), matrix.cols())?;
    let probs = fermion_probs(matrix, &outcomes)?;
    OutcomeDistribution::new(DistributionKind::Fermion, outcomes, probs)
}

/// The exact BosonSampling distribution of `matrix`.
pub fn boson_distribution(matrix: &ComplexMatrix) -> Result<OutcomeDistribution> {
    let outcomes = boson_outcomes(matrix.rows(), matrix.cols())?;
    let probs = boson_probs(matrix, &outcomes)?;
    OutcomeDistribution::new(DistributionKind::Boson, outcomes, probs)
}
