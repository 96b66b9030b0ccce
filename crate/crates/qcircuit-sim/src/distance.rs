//! Trace distance between density matrices.

use nalgebra::{Complex as NaComplex, DMatrix};

use crate::error::{CircuitError, Result};
use crate::state::DensityState;
use crate::Complex64;

/// Eigenvalues of a Hermitian matrix given row-major, ascending order.
pub(crate) fn hermitian_eigenvalues(n_qubits: usize, mat: &[Complex64]) -> Vec<f64> {
    let dim = 1usize << n_qubits;
    let m = DMatrix::from_fn(dim, dim, |r, c| {
        let z = mat[r * dim + c];
        NaComplex::new(z.re, z.im)
    });
    let mut eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// (1/2) * sum of singular values of a - b. For Hermitian differences the
/// singular values are the absolute eigenvalues.
pub fn trace_distance(a: &DensityState, b: &DensityState) -> Result<f64> {
    if a.n_qubits() != b.n_qubits() {
        return Err(CircuitError::InvalidArgument(format!(
            "trace distance between {} and {} qubits",
            a.n_qubits(),
            b.n_qubits()
        )));
    }
    let diff: Vec<Complex64> = a
        .matrix()
        .iter()
        .zip(b.matrix())
        .map(|(x, y)| x - y)
        .collect();
    let eigs = hermitian_eigenvalues(a.n_qubits(), &diff);
    Ok(eigs.iter().map(|l| l.abs()).sum::<f64>() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{apply_gate_density, Gate};
    use crate::state::PureState;
    use matrix_core::{haar_rows, SeededRng};

    fn random_density(n: usize, rng: &mut SeededRng) -> DensityState {
        // random pure state mixed with a dash of the maximally mixed state
        let dim = 1 << n;
        let u = haar_rows(1, dim, rng).unwrap();
        let pure = PureState::from_amplitudes(n, u.entries().to_vec()).unwrap();
        let rho = pure.to_density().unwrap();
        let mixed = DensityState::maximally_mixed(n).unwrap();
        let mat = rho
            .matrix()
            .iter()
            .zip(mixed.matrix())
            .map(|(a, b)| a * 0.7 + b * 0.3)
            .collect();
        DensityState::from_matrix(n, mat).unwrap()
    }

    #[test]
    fn identical_states_have_zero_distance() {
        let mut rng = SeededRng::from_seed(1);
        let rho = random_density(2, &mut rng);
        assert!(trace_distance(&rho, &rho).unwrap() < 1e-14);
    }

    #[test]
    fn orthogonal_pure_states_have_distance_one() {
        let zero = PureState::zero_state(1).unwrap().to_density().unwrap();
        let mut one = PureState::zero_state(1).unwrap();
        crate::gate::apply_gate_pure(&mut one, &Gate::pauli_x(0)).unwrap();
        let one = one.to_density().unwrap();
        let d = trace_distance(&zero, &one).unwrap();
        assert!((d - 1.0).abs() < 1e-12, "distance {d}");
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = SeededRng::from_seed(2);
        let a = random_density(2, &mut rng);
        let b = random_density(2, &mut rng);
        let before = trace_distance(&a, &b).unwrap();
        let u = haar_rows(4, 4, &mut rng).unwrap();
        let gate = Gate::unitary2(0, 1, u.entries().to_vec()).unwrap();
        let mut ua = a.clone();
        let mut ub = b.clone();
        apply_gate_density(&mut ua, &gate).unwrap();
        apply_gate_density(&mut ub, &gate).unwrap();
        let after = trace_distance(&ua, &ub).unwrap();
        assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn metric_properties_on_random_triples() {
        let mut rng = SeededRng::from_seed(3);
        for _ in 0..10 {
            let a = random_density(2, &mut rng);
            let b = random_density(2, &mut rng);
            let c = random_density(2, &mut rng);
            let ab = trace_distance(&a, &b).unwrap();
            let ba = trace_distance(&b, &a).unwrap();
            let bc = trace_distance(&b, &c).unwrap();
            let ac = trace_distance(&a, &c).unwrap();
            assert!((ab - ba).abs() < 1e-12);
            assert!(ac <= ab + bc + 1e-12);
            assert!((0.0..=1.0 + 1e-12).contains(&ab));
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = DensityState::maximally_mixed(1).unwrap();
        let b = DensityState::maximally_mixed(2).unwrap();
        assert!(trace_distance(&a, &b).is_err());
    }
}
