//! Exact FermionSampling, BosonSampling, and FourierSampling distributions,
//! constructed by full enumeration at desk scale and sampled by inverse CDF.

mod distribution;
mod enumerate;
mod error;
mod fourier;
mod matrix_sampling;

pub use distribution::{DistributionKind, OutcomeDistribution, NEGATIVE_PROB_TOLERANCE};
pub use enumerate::{binomial, multiset_count, multisets, subset_count, subsets};
pub use error::{Result, SamplingError};
pub use fourier::{fourier_distribution, walsh_hadamard, BooleanFunction, MAX_BITS};
pub use matrix_sampling::{
    boson_distribution, boson_outcomes, boson_probs, fermion_distribution, fermion_outcomes,
    fermion_probs,
};

/// Hard cap on the number of enumerated outcomes.
pub const ENUMERATION_CAP: u64 = 1_000_000;
