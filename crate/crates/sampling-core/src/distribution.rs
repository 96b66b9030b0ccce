//! Finite outcome distributions and inverse-CDF sampling.

use matrix_core::{ColumnMultiset, SeededRng};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SamplingError};

/// Floating-point noise below this magnitude is clamped to zero; anything
/// more negative signals a kernel bug and is rejected.
pub const NEGATIVE_PROB_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    Fermion,
    Boson,
    Fourier,
}

/// A finite probability distribution over column subsets (fermion), column
/// multisets (boson), or Fourier index sets (encoded as 0/1 repetition
/// vectors over the variables).
///
/// Probabilities sum to 1 when the source matrix has orthonormal rows or the
/// source function is Boolean +-1; for other inputs the entries are the raw
/// squared-kernel values and [`total_mass`](Self::total_mass) reports their sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    kind: DistributionKind,
    outcomes: Vec<ColumnMultiset>,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn new(
        kind: DistributionKind,
        outcomes: Vec<ColumnMultiset>,
        probs: Vec<f64>,
    ) -> Result<Self> {
        if outcomes.len() != probs.len() {
            return Err(SamplingError::InvalidArgument(format!(
                "{} outcomes but {} probabilities",
                outcomes.len(),
                probs.len()
            )));
        }
        if outcomes.is_empty() {
            return Err(SamplingError::InvalidArgument(
                "empty distribution".to_string(),
            ));
        }
        let mut clamped = probs;
        for p in &mut clamped {
            if !p.is_finite() {
                return Err(SamplingError::NumericalContract(
                    "non-finite probability".to_string(),
                ));
            }
            if *p < 0.0 {
                if *p < -NEGATIVE_PROB_TOLERANCE {
                    return Err(SamplingError::NumericalContract(format!(
                        "negative probability {p} beyond tolerance"
                    )));
                }
                *p = 0.0;
            }
        }
        Ok(Self {
            kind,
            outcomes,
            probs: clamped,
        })
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn outcomes(&self) -> &[ColumnMultiset] {
        &self.outcomes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Same outcomes with probabilities scaled to sum to 1.
    pub fn normalized(&self) -> Result<OutcomeDistribution> {
        let mass = self.total_mass();
        if mass <= 0.0 {
            return Err(SamplingError::InvalidArgument(
                "cannot normalize zero-mass distribution".to_string(),
            ));
        }
        Ok(Self {
            kind: self.kind,
            outcomes: self.outcomes.clone(),
            probs: self.probs.iter().map(|p| p / mass).collect(),
        })
    }

    /// Two-column CSV: outcome label, probability.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("outcome,prob\n");
        for (s, p) in self.outcomes.iter().zip(&self.probs) {
            out.push_str(&format!("{},{}\n", s.label(), p));
        }
        out
    }

    /// `k` i.i.d. draws by inverse-CDF lookup; returns outcome indices.
    pub fn sample(&self, rng: &mut SeededRng, k: usize) -> Result<Vec<usize>> {
        if self.outcomes.is_empty() {
            return Err(SamplingError::InvalidArgument(
                "cannot sample from an empty distribution".to_string(),
            ));
        }
        let mass = self.total_mass();
        if mass <= 0.0 {
            return Err(SamplingError::InvalidArgument(
                "cannot sample from a zero-mass distribution".to_string(),
            ));
        }
        let mut cdf = Vec::with_capacity(self.probs.len());
        let mut acc = 0.0;
        for p in &self.probs {
            acc += p;
            cdf.push(acc);
        }
        let draws = (0..k)
            .map(|_| {
                let u = rng.uniform() * mass;
                // first index with cdf > u; the tail guard absorbs rounding
                match cdf.iter().position(|&c| c > u) {
                    Some(i) => i,
                    None => cdf.len() - 1,
                }
            })
            .collect();
        Ok(draws)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_mass() -> OutcomeDistribution {
        OutcomeDistribution::new(
            DistributionKind::Fermion,
            vec![
                ColumnMultiset::from_repetitions(vec![1, 0]),
                ColumnMultiset::from_repetitions(vec![0, 1]),
            ],
            vec![0.0, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn point_mass_samples_constant() {
        let d = point_mass();
        let mut rng = SeededRng::from_seed(1);
        let draws = d.sample(&mut rng, 50).unwrap();
        assert!(draws.iter().all(|&i| i == 1));
    }

    #[test]
    fn same_seed_same_draws() {
        let d = OutcomeDistribution::new(
            DistributionKind::Boson,
            (0..4)
                .map(|i| {
                    let mut reps = vec![0; 4];
                    reps[i] = 1;
                    ColumnMultiset::from_repetitions(reps)
                })
                .collect(),
            vec![0.1, 0.2, 0.3, 0.4],
        )
        .unwrap();
        let a = d.sample(&mut SeededRng::from_seed(8), 200).unwrap();
        let b = d.sample(&mut SeededRng::from_seed(8), 200).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn clamps_tiny_negatives_rejects_large() {
        let outcomes = vec![ColumnMultiset::from_repetitions(vec![1])];
        let ok = OutcomeDistribution::new(DistributionKind::Fermion, outcomes.clone(), vec![-1e-13]);
        assert_eq!(ok.unwrap().probs(), &[0.0]);
        let bad = OutcomeDistribution::new(DistributionKind::Fermion, outcomes, vec![-1e-9]);
        assert!(matches!(bad, Err(SamplingError::NumericalContract(_))));
    }

    #[test]
    fn csv_shape() {
        let d = point_mass();
        let csv = d.to_csv();
        assert_eq!(csv, "outcome,prob\n1,0\n2,1\n");
    }
}
