//! Normalization laws over random orthonormal-row inputs: Cauchy-Binet for
//! fermions, bosonic completeness for bosons.

use matrix_core::{haar_rows, SeededRng};
use sampling_core::{boson_distribution, fermion_distribution, OutcomeDistribution};

#[test]
fn haar_normalization_sweep() {
    let root = SeededRng::from_seed(0xC0FFEE);
    let mut idx = 0u64;
    for n in 2..=4usize {
        for m in [n + 1, 2 * n, 10usize] {
            if m < n {
                continue;
            }
            for _ in 0..3 {
                let mut rng = root.substream("normalization", idx);
                idx += 1;
                let u = haar_rows(n, m, &mut rng).unwrap();
                let f = fermion_distribution(&u).unwrap();
                assert!(
                    (f.total_mass() - 1.0).abs() < 1e-8,
                    "fermion ({n},{m}): {}",
                    f.total_mass()
                );
                let b = boson_distribution(&u).unwrap();
                assert!(
                    (b.total_mass() - 1.0).abs() < 1e-8,
                    "boson ({n},{m}): {}",
                    b.total_mass()
                );
            }
        }
    }
}

#[test]
fn distribution_json_round_trip() {
    let d = boson_distribution(&matrix_core::demo_matrix_2x3()).unwrap();
    let text = serde_json::to_string(&d).unwrap();
    assert!(text.contains("\"kind\":\"boson\""));
    assert!(text.contains("\"outcomes\":[[2,0,0]"));
    let back: OutcomeDistribution = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
}
