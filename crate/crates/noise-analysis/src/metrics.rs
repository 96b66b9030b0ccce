//! Distance and correlation metrics between outcome distributions.

use sampling_core::OutcomeDistribution;

use crate::error::{NoiseError, Result};

/// A probability vector whose standard deviation is this small relative to
/// its largest entry carries no shape information to correlate against.
const DEGENERATE_RATIO: f64 = 1e-12;

/// Pearson correlation of two numeric vectors.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(NoiseError::InvalidArgument(format!(
            "correlation needs equal non-empty vectors, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    let sx = vx.sqrt();
    let sy = vy.sqrt();
    let scale_x = xs.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1e-300);
    let scale_y = ys.iter().fold(0.0f64, |a, y| a.max(y.abs())).max(1e-300);
    if sx <= DEGENERATE_RATIO * n.sqrt() * scale_x || sy <= DEGENERATE_RATIO * n.sqrt() * scale_y {
        return Err(NoiseError::DegenerateInput(
            "zero-variance vector in correlation".to_string(),
        ));
    }
    Ok((cov / (sx * sy)).clamp(-1.0, 1.0))
}

/// Half the L1 distance between two equally long vectors.
pub fn tv_vectors(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(NoiseError::InvalidArgument(format!(
            "total variation needs equal non-empty vectors, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    Ok(xs.iter().zip(ys).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0)
}

fn require_same_outcomes(d1: &OutcomeDistribution, d2: &OutcomeDistribution) -> Result<()> {
    if d1.outcomes() != d2.outcomes() {
        return Err(NoiseError::InvalidArgument(
            "distributions are over different outcome lists".to_string(),
        ));
    }
    Ok(())
}

/// Pearson correlation of the probability vectors over a shared outcome list.
/// 1 exactly when one vector is a positive affine image of the other.
pub fn distribution_correlation(d1: &OutcomeDistribution, d2: &OutcomeDistribution) -> Result<f64> {
    require_same_outcomes(d1, d2)?;
    pearson(d1.probs(), d2.probs())
}

/// Total variation distance (1/2) sum |p_i - q_i| over a shared outcome list.
pub fn total_variation(d1: &OutcomeDistribution, d2: &OutcomeDistribution) -> Result<f64> {
    require_same_outcomes(d1, d2)?;
    tv_vectors(d1.probs(), d2.probs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use matrix_core::{demo_matrix_2x3, ColumnMultiset, SeededRng};
    use sampling_core::{
        boson_distribution, boson_outcomes, fermion_distribution, DistributionKind,
    };

    #[test]
    fn self_correlation_is_one() {
        let d = boson_distribution(&demo_matrix_2x3()).unwrap();
        let c = distribution_correlation(&d, &d).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_vector_is_degenerate() {
        let d = boson_distribution(&demo_matrix_2x3()).unwrap();
        let uniform = OutcomeDistribution::new(
            DistributionKind::Boson,
            d.outcomes().to_vec(),
            vec![1.0 / 6.0; 6],
        )
        .unwrap();
        assert!(matches!(
            distribution_correlation(&d, &uniform),
            Err(NoiseError::DegenerateInput(_))
        ));
    }

    #[test]
    fn independent_random_vectors_center_near_zero() {
        let d = boson_distribution(&demo_matrix_2x3()).unwrap();
        let mut rng = SeededRng::from_seed(13);
        let mut acc = 0.0;
        let draws = 100;
        for _ in 0..draws {
            let raw: Vec<f64> = (0..6).map(|_| rng.uniform()).collect();
            let mass: f64 = raw.iter().sum();
            let probs: Vec<f64> = raw.iter().map(|p| p / mass).collect();
            let other =
                OutcomeDistribution::new(DistributionKind::Boson, d.outcomes().to_vec(), probs)
                    .unwrap();
            acc += distribution_correlation(&d, &other).unwrap();
        }
        let mean = acc / draws as f64;
        assert!(mean.abs() <= 0.3, "mean correlation {mean}");
    }

    #[test]
    fn correlation_is_scale_location_invariant() {
        let d = boson_distribution(&demo_matrix_2x3()).unwrap();
        let shifted: Vec<f64> = d.probs().iter().map(|p| 3.5 * p + 0.25).collect();
        let e = OutcomeDistribution::new(DistributionKind::Boson, d.outcomes().to_vec(), shifted)
            .unwrap();
        let base = fermion_padded();
        let c1 = distribution_correlation(&base, &d).unwrap();
        let c2 = distribution_correlation(&base, &e).unwrap();
        assert!((c1 - c2).abs() < 1e-12);
    }

    /// The demo fermion distribution laid out on the boson multiset support.
    fn fermion_padded() -> OutcomeDistribution {
        let f = fermion_distribution(&demo_matrix_2x3()).unwrap();
        let outcomes = boson_outcomes(2, 3).unwrap();
        let probs = outcomes
            .iter()
            .map(|s| {
                f.outcomes()
                    .iter()
                    .position(|o| o == s)
                    .map_or(0.0, |i| f.probs()[i])
            })
            .collect();
        OutcomeDistribution::new(DistributionKind::Fermion, outcomes, probs).unwrap()
    }

    #[test]
    fn tv_of_identical_is_zero() {
        let d = boson_distribution(&demo_matrix_2x3()).unwrap();
        assert_eq!(total_variation(&d, &d).unwrap(), 0.0);
    }

    #[test]
    fn tv_of_disjoint_point_masses_is_one() {
        let outcomes: Vec<ColumnMultiset> = vec![
            ColumnMultiset::from_repetitions(vec![1, 0]),
            ColumnMultiset::from_repetitions(vec![0, 1]),
        ];
        let a = OutcomeDistribution::new(
            DistributionKind::Fermion,
            outcomes.clone(),
            vec![1.0, 0.0],
        )
        .unwrap();
        let b =
            OutcomeDistribution::new(DistributionKind::Fermion, outcomes, vec![0.0, 1.0]).unwrap();
        assert_eq!(total_variation(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn tv_boson_vs_padded_fermion_by_hand() {
        // probs: boson   (0, 1/6, 1/6, 2/6, 0,   2/6)
        //        fermion (0, 1/6, 1/6, 0,   4/6, 0  )
        // half-sum of |differences| = (2/6 + 4/6 + 2/6) / 2 = 2/3.
        let b = boson_distribution(&demo_matrix_2x3()).unwrap();
        let f = fermion_padded();
        let tv = total_variation(&b, &f).unwrap();
        assert!((tv - 2.0 / 3.0).abs() < 1e-12, "tv = {tv}");
    }

    #[test]
    fn mismatched_outcomes_rejected() {
        let b = boson_distribution(&demo_matrix_2x3()).unwrap();
        let f = fermion_distribution(&demo_matrix_2x3()).unwrap();
        assert!(matches!(
            total_variation(&b, &f),
            Err(NoiseError::InvalidArgument(_))
        ));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn prob_vector(len: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0f64..1.0, len).prop_map(|raw| {
            let mass: f64 = raw.iter().sum::<f64>().max(1e-9);
            raw.into_iter().map(|p| p / mass).collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn tv_satisfies_triangle_inequality(
            a in prob_vector(8),
            b in prob_vector(8),
            c in prob_vector(8),
        ) {
            let ab = tv_vectors(&a, &b).unwrap();
            let bc = tv_vectors(&b, &c).unwrap();
            let ac = tv_vectors(&a, &c).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&ac));
        }

        #[test]
        fn pearson_is_symmetric_and_bounded(a in prob_vector(8), b in prob_vector(8)) {
            match (pearson(&a, &b), pearson(&b, &a)) {
                (Ok(x), Ok(y)) => {
                    prop_assert!((x - y).abs() < 1e-12);
                    prop_assert!((-1.0..=1.0).contains(&x));
                }
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "symmetry of degeneracy violated"),
            }
        }
    }
}
