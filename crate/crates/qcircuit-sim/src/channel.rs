//! Kraus channels, depolarizing noise, correlated two-qubit depolarization,
//! and time-smoothed noise.

use num_complex::Complex;

use crate::error::{CircuitError, Result};
use crate::gate::Circuit;
use crate::state::{apply_operator_to_vec, DensityState};
use crate::Complex64;

const COMPLETENESS_TOLERANCE: f64 = 1e-8;

/// A CPTP map in operator-sum form on the listed target qubits:
/// rho -> sum_j K_j rho K_j^dagger with sum_j K_j^dagger K_j = I.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    targets: Vec<usize>,
    operators: Vec<Vec<Complex64>>,
}

impl KrausChannel {
    pub fn new(targets: Vec<usize>, operators: Vec<Vec<Complex64>>) -> Result<Self> {
        if targets.is_empty() || operators.is_empty() {
            return Err(CircuitError::InvalidArgument(
                "channel needs targets and at least one operator".to_string(),
            ));
        }
        let dim = 1usize << targets.len();
        for op in &operators {
            if op.len() != dim * dim {
                return Err(CircuitError::InvalidArgument(format!(
                    "Kraus operator has {} entries, expected {}",
                    op.len(),
                    dim * dim
                )));
            }
        }
        let channel = Self { targets, operators };
        let err = channel.completeness_error();
        if err > COMPLETENESS_TOLERANCE {
            return Err(CircuitError::NumericalContract(format!(
                "Kraus completeness violated by {err:.3e}"
            )));
        }
        Ok(channel)
    }

    /// Depolarizing channel at rate p on one qubit, in Pauli form:
    /// sqrt(1 - 3p/4) I and sqrt(p/4) X, Y, Z.
    pub fn depolarizing(qubit: usize, p: f64) -> Result<Self> {
        check_probability(p)?;
        let r = |x: f64| Complex::new(x, 0.0);
        let keep = (1.0 - 0.75 * p).sqrt();
        let flip = (0.25 * p).sqrt();
        let ops = vec![
            vec![r(keep), r(0.0), r(0.0), r(keep)],
            vec![r(0.0), r(flip), r(flip), r(0.0)],
            vec![
                r(0.0),
                Complex::new(0.0, -flip),
                Complex::new(0.0, flip),
                r(0.0),
            ],
            vec![r(flip), r(0.0), r(0.0), r(-flip)],
        ];
        Self::new(vec![qubit], ops)
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn operators(&self) -> &[Vec<Complex64>] {
        &self.operators
    }

    /// Max deviation of sum K^dagger K from the identity.
    pub fn completeness_error(&self) -> f64 {
        let dim = 1usize << self.targets.len();
        let mut acc = vec![Complex::new(0.0, 0.0); dim * dim];
        for op in &self.operators {
            for r in 0..dim {
                for c in 0..dim {
                    let mut s = Complex::new(0.0, 0.0);
                    for k in 0..dim {
                        s += op[k * dim + r].conj() * op[k * dim + c];
                    }
                    acc[r * dim + c] += s;
                }
            }
        }
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((acc[r * dim + c] - Complex::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// rho -> sum_j K_j rho K_j^dagger.
    pub fn apply(&self, rho: &DensityState) -> Result<DensityState> {
        for &t in &self.targets {
            if t >= rho.n_qubits() {
                return Err(CircuitError::InvalidArgument(format!(
                    "channel targets qubit {t} but the state has {}",
                    rho.n_qubits()
                )));
            }
        }
        let dim = rho.dim();
        let mut acc = vec![Complex::new(0.0, 0.0); dim * dim];
        for op in &self.operators {
            let mut term = rho.clone();
            term.apply_operator(&self.targets, op);
            for (a, t) in acc.iter_mut().zip(term.matrix()) {
                *a += t;
            }
        }
        DensityState::from_matrix(rho.n_qubits(), acc)
    }

    /// The same channel with every operator expanded to the full n-qubit
    /// space (targets become 0..n-1 in order).
    pub fn embed_full(&self, n_qubits: usize) -> Result<KrausChannel> {
        for &t in &self.targets {
            if t >= n_qubits {
                return Err(CircuitError::InvalidArgument(format!(
                    "cannot embed channel targeting qubit {t} into {n_qubits} qubits"
                )));
            }
        }
        if self.targets.len() == n_qubits && is_canonical_target_order(&self.targets) {
            return Ok(self.clone());
        }
        let dim = 1usize << n_qubits;
        let operators = self
            .operators
            .iter()
            .map(|op| {
                let mut full = Vec::with_capacity(dim * dim);
                let mut column = vec![Complex::new(0.0, 0.0); dim];
                let mut columns = Vec::with_capacity(dim);
                for c in 0..dim {
                    column.fill(Complex::new(0.0, 0.0));
                    column[c] = Complex::new(1.0, 0.0);
                    apply_operator_to_vec(&mut column, n_qubits, &self.targets, op);
                    columns.push(column.clone());
                }
                for r in 0..dim {
                    for col in columns.iter() {
                        full.push(col[r]);
                    }
                }
                full
            })
            .collect();
        KrausChannel::new((0..n_qubits).rev().collect(), operators)
    }
}

/// Full-space targets listed so that the channel's own basis matches the
/// global one (targets [n-1, ..., 1, 0] under the msb-first gate convention).
fn is_canonical_target_order(targets: &[usize]) -> bool {
    targets
        .iter()
        .rev()
        .enumerate()
        .all(|(bit, &t)| t == bit)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CircuitError::InvalidArgument(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Depolarize one qubit: rho -> (1-p) rho + p (I/2 (x) tr_q rho).
pub fn depolarize(rho: &DensityState, qubit: usize, p: f64) -> Result<DensityState> {
    check_probability(p)?;
    if qubit >= rho.n_qubits() {
        return Err(CircuitError::InvalidArgument(format!(
            "qubit {qubit} out of range for {} qubits",
            rho.n_qubits()
        )));
    }
    if rho.n_qubits() == 1 {
        // tr_q rho is the scalar 1
        let dim = 2;
        let mut mat = rho.matrix().to_vec();
        for r in 0..dim {
            for c in 0..dim {
                let mixed = if r == c { 0.5 } else { 0.0 };
                mat[r * dim + c] = mat[r * dim + c] * (1.0 - p) + Complex::new(mixed * p, 0.0);
            }
        }
        return DensityState::from_matrix(1, mat);
    }
    rho.mix_qubit_to_identity(qubit, p)
}

/// Correlated depolarization of a qubit pair: probabilities of (none, only
/// second, only first, both) being fully depolarized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatedNoiseSpec {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
    pub targets: (usize, usize),
}

impl CorrelatedNoiseSpec {
    pub fn new(p00: f64, p01: f64, p10: f64, p11: f64, targets: (usize, usize)) -> Result<Self> {
        for p in [p00, p01, p10, p11] {
            if !(0.0..=1.0).contains(&p) {
                return Err(CircuitError::InvalidArgument(format!(
                    "event probability {p} out of range"
                )));
            }
        }
        let sum = p00 + p01 + p10 + p11;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(CircuitError::InvalidArgument(format!(
                "event probabilities sum to {sum}, not 1"
            )));
        }
        if targets.0 == targets.1 {
            return Err(CircuitError::InvalidArgument(
                "correlated noise needs two distinct qubits".to_string(),
            ));
        }
        Ok(Self {
            p00,
            p01,
            p10,
            p11,
            targets,
        })
    }

    /// Independent errors: p11 = r1 r2 and so on.
    pub fn product(r1: f64, r2: f64, targets: (usize, usize)) -> Result<Self> {
        Self::new(
            (1.0 - r1) * (1.0 - r2),
            (1.0 - r1) * r2,
            r1 * (1.0 - r2),
            r1 * r2,
            targets,
        )
    }

    /// Both qubits or neither: p01 = p10 = 0.
    pub fn all_or_none(p: f64, targets: (usize, usize)) -> Result<Self> {
        Self::new(1.0 - p, 0.0, 0.0, p, targets)
    }

    /// Marginal corruption probability of the first qubit.
    pub fn r1(&self) -> f64 {
        self.p10 + self.p11
    }

    /// Marginal corruption probability of the second qubit.
    pub fn r2(&self) -> f64 {
        self.p01 + self.p11
    }
}

/// Mixture over the four error events, each event fully depolarizing the
/// indicated qubits.
pub fn correlated_depolarize(rho: &DensityState, spec: &CorrelatedNoiseSpec) -> Result<DensityState> {
    let (q1, q2) = spec.targets;
    let d1 = depolarize(rho, q1, 1.0)?;
    let d2 = depolarize(rho, q2, 1.0)?;
    let d12 = depolarize(&d1, q2, 1.0)?;
    let dim = rho.dim();
    let mut mat = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..dim * dim {
        mat[i] = rho.matrix()[i] * spec.p00
            + d2.matrix()[i] * spec.p01
            + d1.matrix()[i] * spec.p10
            + d12.matrix()[i] * spec.p11;
    }
    DensityState::from_matrix(rho.n_qubits(), mat)
}

/// Pearson correlation of the two corruption events:
/// (p11 - r1 r2) / sqrt(r1 (1-r1) r2 (1-r2)).
pub fn error_correlation(spec: &CorrelatedNoiseSpec) -> Result<f64> {
    let r1 = spec.r1();
    let r2 = spec.r2();
    if r1 <= 0.0 || r1 >= 1.0 || r2 <= 0.0 || r2 >= 1.0 {
        return Err(CircuitError::DegenerateInput(format!(
            "marginal rates r1={r1}, r2={r2} admit no correlation"
        )));
    }
    Ok((spec.p11 - r1 * r2) / (r1 * (1.0 - r1) * r2 * (1.0 - r2)).sqrt())
}

// ---- time smoothing ----

fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let f = a[r * dim + k];
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for c in 0..dim {
                out[r * dim + c] += f * b[k * dim + c];
            }
        }
    }
    out
}

fn dagger(a: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            out[c * dim + r] = a[r * dim + c].conj();
        }
    }
    out
}

fn identity_matrix(dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        out[i * dim + i] = Complex::new(1.0, 0.0);
    }
    out
}

fn full_step_unitary(circuit: &Circuit, step: usize) -> Vec<Complex64> {
    let n = circuit.n_qubits();
    let dim = 1usize << n;
    let gate = &circuit.steps()[step];
    let op = gate.matrix();
    let mut out = identity_matrix(dim);
    // build by applying the gate to each identity column
    let mut column = vec![Complex::new(0.0, 0.0); dim];
    for c in 0..dim {
        for (r, slot) in column.iter_mut().enumerate() {
            *slot = out[r * dim + c];
        }
        apply_operator_to_vec(&mut column, n, gate.targets(), &op);
        for r in 0..dim {
            out[r * dim + c] = column[r];
        }
    }
    out
}

/// Time-smoothed noise: for each step t, the uniform mixture over s of the
/// step-s channel conjugated by the circuit evolution between s and t,
///
/// ```text
/// E'_t = (1/T) * sum_{s=1..T} U_{s,t} E_s U_{s,t}^{-1}
/// ```
///
/// with U_{s,t} the product of the step unitaries from s to t (U_{s,s} = I,
/// U_{t,s} = U_{s,t}^{-1}). Output channels act on the full register with
/// up to T * k Kraus operators each.
pub fn time_smoothed_channels(
    circuit: &Circuit,
    raw: &[KrausChannel],
) -> Result<Vec<KrausChannel>> {
    let steps = circuit.depth();
    if raw.len() != steps {
        return Err(CircuitError::InvalidArgument(format!(
            "{} raw channels for {} circuit steps",
            raw.len(),
            steps
        )));
    }
    if steps == 0 {
        return Ok(Vec::new());
    }
    let n = circuit.n_qubits();
    let dim = 1usize << n;

    let embedded: Vec<KrausChannel> = raw
        .iter()
        .map(|ch| ch.embed_full(n))
        .collect::<Result<_>>()?;

    // cumulative[t] = W_t ... W_1 (cumulative[0] = I)
    let mut cumulative = Vec::with_capacity(steps + 1);
    cumulative.push(identity_matrix(dim));
    for t in 0..steps {
        let w = full_step_unitary(circuit, t);
        cumulative.push(matmul(&w, &cumulative[t], dim));
    }

    let scale = 1.0 / (steps as f64).sqrt();
    let mut smoothed = Vec::with_capacity(steps);
    for t in 1..=steps {
        let mut operators = Vec::new();
        for (s, channel) in embedded.iter().enumerate().map(|(i, c)| (i + 1, c)) {
            if s == t {
                for op in channel.operators() {
                    operators.push(if steps == 1 {
                        op.clone()
                    } else {
                        op.iter().map(|z| z * scale).collect()
                    });
                }
            } else {
                // U_{s,t} = C_{t-1} C_{s-1}^dagger for both time directions
                let u = matmul(&cumulative[t - 1], &dagger(&cumulative[s - 1], dim), dim);
                let u_inv = dagger(&u, dim);
                for op in channel.operators() {
                    let conjugated = matmul(&u, &matmul(op, &u_inv, dim), dim);
                    operators.push(conjugated.iter().map(|z| z * scale).collect());
                }
            }
        }
        smoothed.push(KrausChannel::new((0..n).rev().collect(), operators)?);
    }
    Ok(smoothed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{apply_gate_pure, Gate};
    use crate::state::PureState;
    use matrix_core::{haar_rows, SeededRng};

    fn plus_state() -> DensityState {
        let mut s = PureState::zero_state(1).unwrap();
        apply_gate_pure(&mut s, &Gate::hadamard(0)).unwrap();
        s.to_density().unwrap()
    }

    #[test]
    fn depolarize_zero_is_identity() {
        let rho = plus_state();
        let out = depolarize(&rho, 0, 0.0).unwrap();
        assert_eq!(out.matrix(), rho.matrix());
    }

    #[test]
    fn depolarize_full_is_maximally_mixed() {
        let rho = plus_state();
        let out = depolarize(&rho, 0, 1.0).unwrap();
        let mixed = DensityState::maximally_mixed(1).unwrap();
        for (a, b) in out.matrix().iter().zip(mixed.matrix()) {
            assert!((a - b).norm() < 1e-14);
        }
        assert!((out.von_neumann_entropy_bits() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn depolarize_half_shrinks_bloch_x() {
        // |+><+| has Bloch x = 1; rate 1/2 shrinks it to 1/2,
        // so the off-diagonal becomes 1/4.
        let rho = plus_state();
        let out = depolarize(&rho, 0, 0.5).unwrap();
        assert!((out.get(0, 1).re - 0.25).abs() < 1e-14);
        assert!((out.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn correlated_none_event_is_identity() {
        let mut s = PureState::zero_state(2).unwrap();
        apply_gate_pure(&mut s, &Gate::hadamard(0)).unwrap();
        apply_gate_pure(&mut s, &Gate::cnot(0, 1)).unwrap();
        let rho = s.to_density().unwrap();
        let spec = CorrelatedNoiseSpec::new(1.0, 0.0, 0.0, 0.0, (0, 1)).unwrap();
        let out = correlated_depolarize(&rho, &spec).unwrap();
        for (a, b) in out.matrix().iter().zip(rho.matrix()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn product_spec_equals_composed_independent_noise() {
        let mut s = PureState::zero_state(2).unwrap();
        apply_gate_pure(&mut s, &Gate::hadamard(0)).unwrap();
        apply_gate_pure(&mut s, &Gate::cnot(0, 1)).unwrap();
        apply_gate_pure(&mut s, &Gate::phase_t(1)).unwrap();
        let rho = s.to_density().unwrap();

        let (r1, r2) = (0.3, 0.45);
        let spec = CorrelatedNoiseSpec::product(r1, r2, (0, 1)).unwrap();
        let correlated = correlated_depolarize(&rho, &spec).unwrap();
        let composed = depolarize(&depolarize(&rho, 0, r1).unwrap(), 1, r2).unwrap();
        for (a, b) in correlated.matrix().iter().zip(composed.matrix()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn marginal_rates() {
        let spec = CorrelatedNoiseSpec::new(0.9, 0.04, 0.04, 0.02, (0, 1)).unwrap();
        assert!((spec.r1() - 0.06).abs() < 1e-15);
        assert!((spec.r2() - 0.06).abs() < 1e-15);
    }

    #[test]
    fn error_correlation_values() {
        // independent, dyadic rates: exactly zero
        let product = CorrelatedNoiseSpec::product(0.5, 0.25, (0, 1)).unwrap();
        assert_eq!(error_correlation(&product).unwrap(), 0.0);

        // the worked 2x2 table
        let spec = CorrelatedNoiseSpec::new(0.9, 0.04, 0.04, 0.02, (0, 1)).unwrap();
        let cor = error_correlation(&spec).unwrap();
        let expected = (0.02 - 0.06 * 0.06) / (0.06 * 0.94);
        assert!((cor - expected).abs() < 1e-12);
        assert!((cor - 0.2908).abs() < 1e-3);

        // all-or-none, dyadic rate: exactly one
        let sync = CorrelatedNoiseSpec::all_or_none(0.25, (0, 1)).unwrap();
        assert_eq!(error_correlation(&sync).unwrap(), 1.0);

        // degenerate marginals
        let degenerate = CorrelatedNoiseSpec::new(1.0, 0.0, 0.0, 0.0, (0, 1)).unwrap();
        assert!(matches!(
            error_correlation(&degenerate),
            Err(CircuitError::DegenerateInput(_))
        ));
    }

    #[test]
    fn depolarizing_channel_matches_direct_form() {
        let rho = plus_state();
        let channel = KrausChannel::depolarizing(0, 0.37).unwrap();
        let via_kraus = channel.apply(&rho).unwrap();
        let direct = depolarize(&rho, 0, 0.37).unwrap();
        for (a, b) in via_kraus.matrix().iter().zip(direct.matrix()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn channel_application_preserves_contracts() {
        let mut rng = SeededRng::from_seed(11);
        for trial in 0..10 {
            let dim = 4;
            let u = haar_rows(1, dim, &mut rng).unwrap();
            let pure = PureState::from_amplitudes(2, u.entries().to_vec()).unwrap();
            let rho = pure.to_density().unwrap();
            let channel = KrausChannel::depolarizing(trial % 2, 0.1 + 0.08 * trial as f64)
                .unwrap();
            let out = channel.apply(&rho).unwrap();
            assert!((out.trace() - 1.0).abs() < 1e-8);
            assert!(out.hermiticity_error() < 1e-8);
            assert!(out.eigenvalues()[0] >= -1e-6);
        }
    }

    #[test]
    fn smoothing_identity_circuit_is_uniform_mixture() {
        let depth = 4;
        let circuit = Circuit::idle(2, depth).unwrap();
        let raw: Vec<KrausChannel> = (0..depth)
            .map(|s| KrausChannel::depolarizing(s % 2, 0.05 + 0.1 * s as f64).unwrap())
            .collect();
        let smoothed = time_smoothed_channels(&circuit, &raw).unwrap();
        assert_eq!(smoothed.len(), depth);

        let scale = 1.0 / (depth as f64).sqrt();
        let expected: Vec<Vec<Complex64>> = raw
            .iter()
            .flat_map(|ch| {
                ch.embed_full(2)
                    .unwrap()
                    .operators()
                    .iter()
                    .map(|op| op.iter().map(|z| z * scale).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .collect();
        for smoothed_t in &smoothed {
            assert_eq!(smoothed_t.operators().len(), expected.len());
            for (a, b) in smoothed_t.operators().iter().zip(&expected) {
                let dev: f64 = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                assert!(dev <= 1e-12, "deviation {dev}");
            }
        }
    }

    #[test]
    fn smoothing_single_step_is_the_raw_channel() {
        let circuit = Circuit::new(2, vec![Gate::cnot(0, 1)]).unwrap();
        let raw = vec![KrausChannel::depolarizing(0, 0.2).unwrap()];
        let smoothed = time_smoothed_channels(&circuit, &raw).unwrap();
        assert_eq!(smoothed.len(), 1);
        let embedded = raw[0].embed_full(2).unwrap();
        assert_eq!(smoothed[0].operators(), embedded.operators());
    }

    #[test]
    fn smoothing_random_circuits_stay_complete() {
        let mut rng = SeededRng::from_seed(12);
        for _ in 0..5 {
            let depth = 3 + (rng.below(3));
            let steps: Vec<Gate> = (0..depth)
                .map(|_| {
                    let u = haar_rows(4, 4, &mut rng).unwrap();
                    Gate::unitary2(0, 1, u.entries().to_vec()).unwrap()
                })
                .collect();
            let circuit = Circuit::new(2, steps).unwrap();
            let raw: Vec<KrausChannel> = (0..depth)
                .map(|s| KrausChannel::depolarizing(s % 2, 0.15).unwrap())
                .collect();
            // KrausChannel::new re-checks completeness on construction
            let smoothed = time_smoothed_channels(&circuit, &raw).unwrap();
            for ch in &smoothed {
                assert!(ch.completeness_error() <= 1e-8);
            }
        }
    }

    #[test]
    fn smoothing_length_mismatch_rejected() {
        let circuit = Circuit::idle(2, 3).unwrap();
        let raw = vec![KrausChannel::depolarizing(0, 0.1).unwrap()];
        assert!(time_smoothed_channels(&circuit, &raw).is_err());
    }
}
