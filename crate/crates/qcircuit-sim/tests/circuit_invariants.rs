//! Register-level invariants over random circuits.

use matrix_core::{haar_rows, SeededRng};
use qcircuit_sim::{
    apply_gate_density, apply_gate_pure, depolarize, correlated_depolarize,
    CorrelatedNoiseSpec, Circuit, DensityState, Gate, PureState,
};

fn random_gate(n_qubits: usize, rng: &mut SeededRng) -> Gate {
    match rng.below(4) {
        0 => Gate::hadamard(rng.below(n_qubits)),
        1 => Gate::phase_t(rng.below(n_qubits)),
        2 => {
            let u = haar_rows(2, 2, rng).unwrap();
            Gate::unitary1(rng.below(n_qubits), u.entries().to_vec()).unwrap()
        }
        _ => {
            let a = rng.below(n_qubits);
            let b = (a + 1 + rng.below(n_qubits - 1)) % n_qubits;
            if rng.below(2) == 0 {
                Gate::cnot(a, b)
            } else {
                let u = haar_rows(4, 4, rng).unwrap();
                Gate::unitary2(a, b, u.entries().to_vec()).unwrap()
            }
        }
    }
}

#[test]
fn unitary_circuits_preserve_norm() {
    let root = SeededRng::from_seed(2024);
    for trial in 0..100 {
        let mut rng = root.substream("circuit", trial);
        let n = 8;
        let steps: Vec<Gate> = (0..50).map(|_| random_gate(n, &mut rng)).collect();
        let circuit = Circuit::new(n, steps).unwrap();
        let mut state = PureState::zero_state(n).unwrap();
        for gate in circuit.steps() {
            apply_gate_pure(&mut state, gate).unwrap();
        }
        let norm = state.norm();
        assert!(
            (norm - 1.0).abs() < 1e-10,
            "trial {trial}: norm drifted to {norm}"
        );
    }
}

#[test]
fn noise_channels_preserve_trace_and_hermiticity() {
    let root = SeededRng::from_seed(77);
    for trial in 0..20 {
        let mut rng = root.substream("density", trial);
        let n = 3;
        let mut rho = DensityState::zero_state(n).unwrap();
        for _ in 0..10 {
            apply_gate_density(&mut rho, &random_gate(n, &mut rng)).unwrap();
        }
        rho = depolarize(&rho, rng.below(n), 0.2).unwrap();
        let spec = CorrelatedNoiseSpec::new(0.85, 0.05, 0.05, 0.05, (0, 2)).unwrap();
        rho = correlated_depolarize(&rho, &spec).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-8);
        assert!(rho.hermiticity_error() < 1e-8);
        assert!(rho.eigenvalues()[0] >= -1e-6);
    }
}
