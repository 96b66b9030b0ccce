//! Entanglement measures on pure states.


use crate::error::{CircuitError, Result};
use crate::state::PureState;
use crate::Complex64;
use matrix_core::SeededRng;

/// Outcome counts up to this bound are enumerated exactly; beyond it the
/// measurement average is sampled.
const EXACT_OUTCOME_LIMIT: usize = 1 << 10;

fn binary_entropy_bits(p: f64) -> f64 {
    let term = |x: f64| if x > 1e-12 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Von Neumann entropy (base 2) of the reduced state of one qubit; the
/// standard entanglement measure for a pure joint state.
pub fn entanglement_entropy(state: &PureState, qubit: usize) -> Result<f64> {
    let rho = state.reduced_qubit(qubit)?;
    // 2x2 Hermitian with unit trace: eigenvalues 1/2 +- sqrt(1/4 - det)
    let det = (rho[0] * rho[3] - rho[1] * rho[2]).re;
    let gap = (0.25 - det).max(0.0).sqrt();
    Ok(binary_entropy_bits(0.5 + gap))
}

/// Entanglement of `pair` after measuring every other qubit in the
/// computational basis: the outcome-probability-weighted average of the
/// residual two-qubit entanglement. Exact enumeration up to 2^10 outcomes,
/// sampled with `trials` measurement shots beyond that.
pub fn emergent_entanglement(
    state: &PureState,
    pair: (usize, usize),
    rng: &mut SeededRng,
    trials: usize,
) -> Result<f64> {
    let n = state.n_qubits();
    let (qa, qb) = pair;
    if qa == qb || qa >= n || qb >= n {
        return Err(CircuitError::InvalidArgument(format!(
            "invalid qubit pair ({qa}, {qb}) for {n} qubits"
        )));
    }
    if n < 3 {
        return Err(CircuitError::InvalidArgument(
            "emergent entanglement needs at least one measured qubit".to_string(),
        ));
    }

    let mask_a = 1usize << qa;
    let mask_b = 1usize << qb;
    let pair_mask = mask_a | mask_b;
    let outcome_count = 1usize << (n - 2);

    // residual (unnormalized) two-qubit state for the measurement outcome
    // carried by `rest`, in basis |b_a b_b>
    let residual = |rest: usize| -> [Complex64; 4] {
        // spread `rest` bits over the non-pair positions
        let mut base = 0usize;
        let mut src = rest;
        for bit in 0..n {
            let m = 1usize << bit;
            if m & pair_mask != 0 {
                continue;
            }
            if src & 1 != 0 {
                base |= m;
            }
            src >>= 1;
        }
        let amp = |a: usize, b: usize| {
            state.amplitudes()[base | (a * mask_a) | (b * mask_b)]
        };
        [amp(0, 0), amp(0, 1), amp(1, 0), amp(1, 1)]
    };

    let residual_entropy = |amps: &[Complex64; 4]| -> (f64, f64) {
        let weight: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if weight <= 1e-300 {
            return (0.0, 0.0);
        }
        // entropy of the first qubit of the residual pair
        let r00 = (amps[0].norm_sqr() + amps[1].norm_sqr()) / weight;
        let r01 = (amps[0] * amps[2].conj() + amps[1] * amps[3].conj()) / weight;
        let det = r00 * (1.0 - r00) - r01.norm_sqr();
        let spread = (0.25 - det).max(0.0).sqrt();
        (weight, binary_entropy_bits(0.5 + spread))
    };

    if outcome_count <= EXACT_OUTCOME_LIMIT {
        let mut acc = 0.0;
        for rest in 0..outcome_count {
            let amps = residual(rest);
            let (weight, entropy) = residual_entropy(&amps);
            acc += weight * entropy;
        }
        Ok(acc)
    } else {
        if trials == 0 {
            return Err(CircuitError::InvalidArgument(
                "sampled estimation needs trials > 0".to_string(),
            ));
        }
        // sample a basis index by Born weight, keep its non-pair bits
        let weights: Vec<f64> = state.amplitudes().iter().map(|z| z.norm_sqr()).collect();
        let mut cdf = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for w in &weights {
            acc += w;
            cdf.push(acc);
        }
        let mut total = 0.0;
        for _ in 0..trials {
            let u = rng.uniform() * acc;
            let idx = cdf.partition_point(|&c| c <= u).min(weights.len() - 1);
            let mut rest = 0usize;
            let mut out_bit = 0;
            for bit in 0..n {
                let m = 1usize << bit;
                if m & pair_mask != 0 {
                    continue;
                }
                if idx & m != 0 {
                    rest |= 1 << out_bit;
                }
                out_bit += 1;
            }
            let amps = residual(rest);
            let (_, entropy) = residual_entropy(&amps);
            total += entropy;
        }
        Ok(total / trials as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{apply_gate_pure, Gate};
    use num_complex::Complex;

    fn cat() -> PureState {
        let mut s = PureState::zero_state(2).unwrap();
        apply_gate_pure(&mut s, &Gate::hadamard(0)).unwrap();
        apply_gate_pure(&mut s, &Gate::cnot(0, 1)).unwrap();
        s
    }

    fn ghz(n: usize) -> PureState {
        let mut s = PureState::zero_state(n).unwrap();
        apply_gate_pure(&mut s, &Gate::hadamard(0)).unwrap();
        for q in 1..n {
            apply_gate_pure(&mut s, &Gate::cnot(0, q)).unwrap();
        }
        s
    }

    #[test]
    fn product_state_has_zero_entropy() {
        let s = PureState::zero_state(2).unwrap();
        assert_eq!(entanglement_entropy(&s, 0).unwrap(), 0.0);
    }

    #[test]
    fn cat_state_has_one_bit() {
        let e = entanglement_entropy(&cat(), 0).unwrap();
        assert!((e - 1.0).abs() < 1e-10, "entropy {e}");
        let e1 = entanglement_entropy(&cat(), 1).unwrap();
        assert!((e - e1).abs() < 1e-12);
    }

    #[test]
    fn partially_entangled_matches_binary_entropy() {
        // cos(pi/6)|00> + sin(pi/6)|11>: entropy H2(1/4)
        let theta = std::f64::consts::PI / 6.0;
        let mut amps = vec![Complex::new(0.0, 0.0); 4];
        amps[0] = Complex::new(theta.cos(), 0.0);
        amps[3] = Complex::new(theta.sin(), 0.0);
        let s = PureState::from_amplitudes(2, amps).unwrap();
        let expected = binary_entropy_bits(0.25);
        assert!((expected - 0.8112781244591328).abs() < 1e-12);
        let e = entanglement_entropy(&s, 0).unwrap();
        assert!((e - expected).abs() < 1e-12, "entropy {e}");
    }

    #[test]
    fn entropy_invariant_under_local_unitaries() {
        let mut rng = SeededRng::from_seed(9);
        let mut s = cat();
        let before = entanglement_entropy(&s, 0).unwrap();
        for q in 0..2 {
            let u = matrix_core::haar_rows(2, 2, &mut rng).unwrap();
            let gate = Gate::unitary1(q, u.entries().to_vec()).unwrap();
            apply_gate_pure(&mut s, &gate).unwrap();
        }
        let after = entanglement_entropy(&s, 0).unwrap();
        assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn ghz_measurement_kills_entanglement() {
        let s = ghz(3);
        let mut rng = SeededRng::from_seed(1);
        let e = emergent_entanglement(&s, (0, 1), &mut rng, 0).unwrap();
        assert!(e.abs() < 1e-12, "emergent entanglement {e}");
    }

    #[test]
    fn spectator_measurement_preserves_cat() {
        // cat (x) |0>: measuring the unentangled third qubit leaves the cat
        let mut s = PureState::zero_state(3).unwrap();
        apply_gate_pure(&mut s, &Gate::hadamard(0)).unwrap();
        apply_gate_pure(&mut s, &Gate::cnot(0, 1)).unwrap();
        let mut rng = SeededRng::from_seed(2);
        let e = emergent_entanglement(&s, (0, 1), &mut rng, 0).unwrap();
        assert!((e - 1.0).abs() < 1e-10, "emergent entanglement {e}");
    }

    #[test]
    fn product_state_stays_product() {
        let s = PureState::zero_state(4).unwrap();
        let mut rng = SeededRng::from_seed(3);
        let e = emergent_entanglement(&s, (1, 2), &mut rng, 0).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn overlapping_pair_rejected() {
        let s = PureState::zero_state(3).unwrap();
        let mut rng = SeededRng::from_seed(4);
        assert!(emergent_entanglement(&s, (1, 1), &mut rng, 0).is_err());
    }

    #[test]
    fn sampled_path_matches_exact_on_ghz() {
        // force the sampled path by a wide register
        let s = ghz(13);
        let mut rng = SeededRng::from_seed(5);
        let sampled = emergent_entanglement(&s, (0, 1), &mut rng, 2000).unwrap();
        assert!(sampled.abs() < 1e-10, "sampled {sampled}");
    }
}
