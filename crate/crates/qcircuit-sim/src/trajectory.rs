//! Noisy trajectory simulation and error-count statistics.
//!
//! A trajectory evolves a pure state through the circuit; after each step the
//! noise model samples a set of corrupted qubits, and each corrupted qubit
//! receives a uniformly random Pauli (the trajectory unraveling of full
//! depolarization). The corrupted sets are the quantities of interest: their
//! per-cycle counts measure error rate, synchronization, and fluctuation
//! scaling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{CircuitError, Result};
use crate::gate::{apply_gate_pure, Circuit};
use crate::state::{PureState, MAX_PURE_QUBITS};
use matrix_core::SeededRng;

/// How corrupted-qubit sets are drawn each cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum NoiseModel {
    /// Each qubit independently corrupted with probability p.
    Independent { p: f64 },
    /// Gaussian-copula model: one latent standard normal per qubit with a
    /// uniform pairwise latent correlation calibrated so that the corruption
    /// events have the requested pairwise correlation; thresholded at rate p.
    PairwiseCorrelated { p: f64, correlation: f64 },
    /// All qubits corrupted together with probability p, none otherwise.
    AllOrNone { p: f64 },
}

impl NoiseModel {
    pub fn rate(&self) -> f64 {
        match self {
            NoiseModel::Independent { p }
            | NoiseModel::PairwiseCorrelated { p, .. }
            | NoiseModel::AllOrNone { p } => *p,
        }
    }

    pub fn compile(&self) -> Result<CompiledNoise> {
        let p = self.rate();
        if !(0.0..=1.0).contains(&p) {
            return Err(CircuitError::InvalidArgument(format!(
                "corruption rate must lie in [0, 1], got {p}"
            )));
        }
        match *self {
            NoiseModel::Independent { p } => Ok(CompiledNoise::Independent { p }),
            NoiseModel::AllOrNone { p } => Ok(CompiledNoise::AllOrNone { p }),
            NoiseModel::PairwiseCorrelated { p, correlation } => {
                if !(0.0..1.0).contains(&correlation) {
                    return Err(CircuitError::InvalidArgument(format!(
                        "event correlation must lie in [0, 1), got {correlation}"
                    )));
                }
                if p <= 0.0 || p >= 1.0 {
                    return Err(CircuitError::DegenerateInput(
                        "thresholded correlation needs 0 < p < 1".to_string(),
                    ));
                }
                let normal = Normal::new(0.0, 1.0).expect("standard normal");
                let threshold = normal.inverse_cdf(p);
                let latent = latent_correlation_for(p, threshold, correlation);
                Ok(CompiledNoise::Pairwise {
                    p,
                    threshold,
                    latent,
                })
            }
        }
    }
}

/// Density of the bivariate standard normal at (h, h) with correlation r.
fn bivariate_density_diag(h: f64, r: f64) -> f64 {
    let one_minus = 1.0 - r * r;
    (-(h * h) * (1.0 - r) / one_minus).exp() / (2.0 * std::f64::consts::PI * one_minus.sqrt())
}

/// P(Z1 <= h, Z2 <= h) for correlated standard normals, via the identity
/// d/dr Phi2(h, h; r) = phi2(h, h; r) integrated from r = 0 with Simpson's
/// rule.
fn bivariate_cdf_diag(h: f64, r: f64, marginal: f64) -> f64 {
    let steps = 256;
    let width = r / steps as f64;
    let mut integral = bivariate_density_diag(h, 0.0) + bivariate_density_diag(h, r);
    for i in 1..steps {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        integral += weight * bivariate_density_diag(h, width * i as f64);
    }
    marginal * marginal + integral * width / 3.0
}

/// Event correlation of two thresholded equicorrelated latents.
fn event_correlation(p: f64, threshold: f64, latent: f64) -> f64 {
    let joint = bivariate_cdf_diag(threshold, latent, p);
    (joint - p * p) / (p * (1.0 - p))
}

/// Invert the (monotone) latent -> event correlation map by bisection.
fn latent_correlation_for(p: f64, threshold: f64, target: f64) -> f64 {
    if target == 0.0 {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = 1.0 - 1e-9;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if event_correlation(p, threshold, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CompiledNoise {
    Independent { p: f64 },
    Pairwise { p: f64, threshold: f64, latent: f64 },
    AllOrNone { p: f64 },
}

impl CompiledNoise {
    /// Number of corrupted qubits in one cycle (any register width).
    pub fn sample_count(&self, n: usize, rng: &mut SeededRng) -> usize {
        match *self {
            CompiledNoise::Independent { p } => {
                (0..n).filter(|_| rng.uniform() < p).count()
            }
            CompiledNoise::AllOrNone { p } => {
                if rng.uniform() < p {
                    n
                } else {
                    0
                }
            }
            CompiledNoise::Pairwise {
                threshold, latent, ..
            } => {
                let shared = rng.standard_normal();
                let a = latent.sqrt();
                let b = (1.0 - latent).sqrt();
                (0..n)
                    .filter(|_| a * shared + b * rng.standard_normal() <= threshold)
                    .count()
            }
        }
    }

    /// Corrupted-qubit bitmask for one cycle, register width <= 64.
    pub fn sample_mask(&self, n: usize, rng: &mut SeededRng) -> u64 {
        debug_assert!(n <= 64);
        match *self {
            CompiledNoise::Independent { p } => {
                let mut mask = 0u64;
                for q in 0..n {
                    if rng.uniform() < p {
                        mask |= 1 << q;
                    }
                }
                mask
            }
            CompiledNoise::AllOrNone { p } => {
                if rng.uniform() < p {
                    if n == 64 {
                        u64::MAX
                    } else {
                        (1u64 << n) - 1
                    }
                } else {
                    0
                }
            }
            CompiledNoise::Pairwise {
                threshold, latent, ..
            } => {
                let shared = rng.standard_normal();
                let a = latent.sqrt();
                let b = (1.0 - latent).sqrt();
                let mut mask = 0u64;
                for q in 0..n {
                    if a * shared + b * rng.standard_normal() <= threshold {
                        mask |= 1 << q;
                    }
                }
                mask
            }
        }
    }
}

/// Per-trial, per-cycle corrupted-qubit sets.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTrace {
    pub n_qubits: usize,
    pub cycles: usize,
    /// masks[trial][cycle] is the corrupted-qubit bitmask.
    pub masks: Vec<Vec<u64>>,
}

impl ErrorTrace {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,cycle,corrupted_count,corrupted_mask_hex\n");
        for (trial, cycles) in self.masks.iter().enumerate() {
            for (cycle, mask) in cycles.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{:x}\n",
                    trial,
                    cycle,
                    mask.count_ones(),
                    mask
                ));
            }
        }
        out
    }

    pub fn total_events(&self) -> u64 {
        self.masks
            .iter()
            .flat_map(|cycles| cycles.iter())
            .map(|m| u64::from(m.count_ones()))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryStats {
    pub mean_corrupted_per_cycle: f64,
    pub std_corrupted_per_cycle: f64,
    /// count_histogram[k] = number of (trial, cycle) pairs with k corruptions.
    pub count_histogram: Vec<u64>,
    /// Events per qubit-cycle.
    pub raw_error_rate: f64,
    /// First-corruption hazard: the per-cycle corruption probability of a
    /// qubit conditioned on it having survived every earlier cycle.
    pub survival_conditioned_rate: f64,
    /// Mean |<ideal | noisy>|^2 against the noiseless final state.
    pub mean_final_fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryReport {
    pub trace: ErrorTrace,
    pub stats: TrajectoryStats,
}

/// Run `trials` noisy trajectories of `circuit`. Trial t draws from the
/// substream ("trajectory", t) of `rng`'s seed, so results are independent
/// of scheduling.
pub fn run_noisy_trajectories(
    circuit: &Circuit,
    model: &NoiseModel,
    trials: usize,
    rng: &SeededRng,
) -> Result<TrajectoryReport> {
    let n = circuit.n_qubits();
    if n > MAX_PURE_QUBITS {
        return Err(CircuitError::QubitCap {
            what: "trajectory simulation",
            n,
            cap: MAX_PURE_QUBITS,
        });
    }
    if trials == 0 {
        return Err(CircuitError::InvalidArgument(
            "need at least one trial".to_string(),
        ));
    }
    let compiled = model.compile()?;
    let ideal = circuit.run_pure(&PureState::zero_state(n)?)?;

    let pauli_ops = [
        crate::gate::Gate::pauli_x(0).matrix(),
        crate::gate::Gate::pauli_y(0).matrix(),
        crate::gate::Gate::pauli_z(0).matrix(),
    ];

    let per_trial: Vec<Result<(Vec<u64>, f64)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut trial_rng = rng.substream("trajectory", trial as u64);
            let mut state = PureState::zero_state(n)?;
            let mut masks = Vec::with_capacity(circuit.depth());
            for gate in circuit.steps() {
                apply_gate_pure(&mut state, gate)?;
                let mask = compiled.sample_mask(n, &mut trial_rng);
                for q in 0..n {
                    if mask & (1 << q) != 0 {
                        // uniform Pauli, the unraveling of full depolarization
                        let which = trial_rng.below(4);
                        if which > 0 {
                            state.apply_operator(&[q], &pauli_ops[which - 1]);
                        }
                    }
                }
                masks.push(mask);
            }
            let fidelity = ideal.inner(&state).norm_sqr();
            Ok((masks, fidelity))
        })
        .collect();

    let mut masks = Vec::with_capacity(trials);
    let mut fidelity_sum = 0.0;
    for r in per_trial {
        let (m, f) = r?;
        masks.push(m);
        fidelity_sum += f;
    }
    let trace = ErrorTrace {
        n_qubits: n,
        cycles: circuit.depth(),
        masks,
    };
    let stats = summarize(&trace, fidelity_sum / trials as f64);
    Ok(TrajectoryReport { trace, stats })
}

fn summarize(trace: &ErrorTrace, mean_final_fidelity: f64) -> TrajectoryStats {
    let n = trace.n_qubits;
    let samples: Vec<u32> = trace
        .masks
        .iter()
        .flat_map(|cycles| cycles.iter().map(|m| m.count_ones()))
        .collect();
    let total = samples.len() as f64;
    let mean = samples.iter().map(|&c| f64::from(c)).sum::<f64>() / total;
    let var = samples
        .iter()
        .map(|&c| (f64::from(c) - mean).powi(2))
        .sum::<f64>()
        / (total - 1.0).max(1.0);
    let mut histogram = vec![0u64; n + 1];
    for &c in &samples {
        histogram[c as usize] += 1;
    }

    // survival-conditioned rate: first corruption per (trial, qubit)
    let mut events = 0u64;
    let mut at_risk_cycles = 0u64;
    for cycles in &trace.masks {
        for q in 0..n {
            let mut survived = 0u64;
            let mut hit = false;
            for mask in cycles {
                survived += 1;
                if mask & (1 << q) != 0 {
                    hit = true;
                    break;
                }
            }
            events += u64::from(hit);
            at_risk_cycles += survived;
        }
    }

    TrajectoryStats {
        mean_corrupted_per_cycle: mean,
        std_corrupted_per_cycle: var.sqrt(),
        count_histogram: histogram,
        raw_error_rate: trace.total_events() as f64
            / (total * n as f64),
        survival_conditioned_rate: if at_risk_cycles > 0 {
            events as f64 / at_risk_cycles as f64
        } else {
            0.0
        },
        mean_final_fidelity,
    }
}

/// Standard deviation of the per-cycle corrupted count for each register
/// width, with the log-log fitted scaling exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluctuationTable {
    pub rows: Vec<FluctuationRow>,
    pub fitted_exponent: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluctuationRow {
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
}

impl FluctuationTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,mean,std,fitted_exponent\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n, row.mean, row.std_dev, self.fitted_exponent
            ));
        }
        out
    }
}

/// Sample per-cycle corrupted counts for each N and fit std ~ N^exponent.
/// Cell (N index i, trial t) draws from substream ("fluctuation", i << 32 | t).
pub fn fluctuation_scaling(
    model: &NoiseModel,
    n_list: &[usize],
    trials: usize,
    rng: &SeededRng,
) -> Result<FluctuationTable> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CircuitError::InvalidArgument(
            "register sizes must be ascending and non-empty".to_string(),
        ));
    }
    if trials < 2 {
        return Err(CircuitError::InvalidArgument(
            "need at least two trials".to_string(),
        ));
    }
    let compiled = model.compile()?;

    let rows: Vec<FluctuationRow> = n_list
        .par_iter()
        .enumerate()
        .map(|(i, &n)| {
            let counts: Vec<f64> = (0..trials)
                .map(|t| {
                    let mut cell_rng =
                        rng.substream("fluctuation", ((i as u64) << 32) | t as u64);
                    compiled.sample_count(n, &mut cell_rng) as f64
                })
                .collect();
            let mean = counts.iter().sum::<f64>() / trials as f64;
            let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>()
                / (trials as f64 - 1.0);
            FluctuationRow {
                n,
                mean,
                std_dev: var.sqrt(),
            }
        })
        .collect();

    if rows.iter().any(|r| r.std_dev <= 0.0) {
        return Err(CircuitError::DegenerateInput(
            "zero fluctuation; exponent undefined".to_string(),
        ));
    }

    // least-squares slope of ln(std) against ln(N)
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.std_dev.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let fitted_exponent = if sxx > 0.0 { sxy / sxx } else { 0.0 };

    Ok(FluctuationTable {
        rows,
        fitted_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Gate;

    fn small_circuit(n: usize, depth: usize) -> Circuit {
        let mut steps = Vec::new();
        for d in 0..depth {
            steps.push(Gate::hadamard(d % n));
            if n > 1 {
                steps.push(Gate::cnot(d % n, (d + 1) % n));
            }
        }
        Circuit::new(n, steps).unwrap()
    }

    #[test]
    fn zero_rate_gives_empty_trace_and_unit_fidelity() {
        let circuit = small_circuit(3, 4);
        let report = run_noisy_trajectories(
            &circuit,
            &NoiseModel::Independent { p: 0.0 },
            200,
            &SeededRng::from_seed(1),
        )
        .unwrap();
        assert_eq!(report.trace.total_events(), 0);
        assert_eq!(report.stats.mean_corrupted_per_cycle, 0.0);
        assert!((report.stats.mean_final_fidelity - 1.0).abs() < 1e-10);
    }

    #[test]
    fn independent_counts_match_binomial() {
        let n = 6;
        let p = 0.15;
        let circuit = small_circuit(n, 5);
        let trials = 10_000;
        let report = run_noisy_trajectories(
            &circuit,
            &NoiseModel::Independent { p },
            trials,
            &SeededRng::from_seed(2),
        )
        .unwrap();
        let cycles = (trials * circuit.depth()) as f64;
        let expected_mean = n as f64 * p;
        let expected_std = (n as f64 * p * (1.0 - p)).sqrt();
        let se_mean = expected_std / cycles.sqrt();
        assert!(
            (report.stats.mean_corrupted_per_cycle - expected_mean).abs() <= 3.0 * se_mean,
            "mean {} vs {expected_mean}",
            report.stats.mean_corrupted_per_cycle
        );
        assert!(
            (report.stats.std_corrupted_per_cycle - expected_std).abs()
                <= 3.0 * expected_std / (2.0 * cycles).sqrt() * 2.0,
            "std {} vs {expected_std}",
            report.stats.std_corrupted_per_cycle
        );
    }

    #[test]
    fn all_or_none_counts_are_bimodal() {
        let n = 5;
        let circuit = small_circuit(n, 3);
        let report = run_noisy_trajectories(
            &circuit,
            &NoiseModel::AllOrNone { p: 0.3 },
            2_000,
            &SeededRng::from_seed(3),
        )
        .unwrap();
        let h = &report.stats.count_histogram;
        let total: u64 = h.iter().sum();
        assert_eq!(h[0] + h[n], total, "histogram {h:?} should be bimodal");
        assert!(h[0] > 0 && h[n] > 0);
    }

    #[test]
    fn survival_rate_close_to_raw_for_rare_errors() {
        let circuit = small_circuit(4, 6);
        let report = run_noisy_trajectories(
            &circuit,
            &NoiseModel::Independent { p: 0.02 },
            5_000,
            &SeededRng::from_seed(4),
        )
        .unwrap();
        let raw = report.stats.raw_error_rate;
        let conditioned = report.stats.survival_conditioned_rate;
        assert!((raw - 0.02).abs() < 0.005, "raw {raw}");
        assert!((conditioned - 0.02).abs() < 0.005, "conditioned {conditioned}");
    }

    #[test]
    fn copula_calibration_hits_target_correlation() {
        let p = 0.1;
        let target = 0.3;
        let compiled = NoiseModel::PairwiseCorrelated {
            p,
            correlation: target,
        }
        .compile()
        .unwrap();
        let mut rng = SeededRng::from_seed(5);
        let trials = 200_000;
        let (mut e1, mut e2, mut both) = (0u64, 0u64, 0u64);
        for _ in 0..trials {
            let mask = compiled.sample_mask(2, &mut rng);
            e1 += mask & 1;
            e2 += (mask >> 1) & 1;
            both += u64::from(mask == 3);
        }
        let r1 = e1 as f64 / trials as f64;
        let r2 = e2 as f64 / trials as f64;
        let p11 = both as f64 / trials as f64;
        let cor = (p11 - r1 * r2) / (r1 * (1.0 - r1) * r2 * (1.0 - r2)).sqrt();
        assert!((r1 - p).abs() < 0.01 && (r2 - p).abs() < 0.01);
        assert!((cor - target).abs() < 0.02, "empirical correlation {cor}");
    }

    #[test]
    fn exponents_separate_the_models() {
        let rng = SeededRng::from_seed(6);
        let n_list = [8, 16, 32, 64];
        let trials = 10_000;

        let independent =
            fluctuation_scaling(&NoiseModel::Independent { p: 0.1 }, &n_list, trials, &rng)
                .unwrap();
        assert!(
            (independent.fitted_exponent - 0.5).abs() <= 0.1,
            "independent exponent {}",
            independent.fitted_exponent
        );

        let synchronized =
            fluctuation_scaling(&NoiseModel::AllOrNone { p: 0.1 }, &n_list, trials, &rng)
                .unwrap();
        assert!(
            (synchronized.fitted_exponent - 1.0).abs() <= 0.1,
            "all-or-none exponent {}",
            synchronized.fitted_exponent
        );

        let correlated = fluctuation_scaling(
            &NoiseModel::PairwiseCorrelated {
                p: 0.1,
                correlation: 0.3,
            },
            &n_list,
            trials,
            &rng,
        )
        .unwrap();
        assert!(
            correlated.fitted_exponent > 0.5,
            "correlated exponent {}",
            correlated.fitted_exponent
        );
    }

    #[test]
    fn rejects_unsorted_sizes_and_zero_fluctuation() {
        let rng = SeededRng::from_seed(7);
        assert!(fluctuation_scaling(
            &NoiseModel::Independent { p: 0.1 },
            &[16, 8],
            100,
            &rng
        )
        .is_err());
        assert!(matches!(
            fluctuation_scaling(&NoiseModel::Independent { p: 0.0 }, &[8, 16], 100, &rng),
            Err(CircuitError::DegenerateInput(_))
        ));
    }

    #[test]
    fn trajectories_are_deterministic() {
        let circuit = small_circuit(4, 5);
        let model = NoiseModel::PairwiseCorrelated {
            p: 0.2,
            correlation: 0.4,
        };
        let a = run_noisy_trajectories(&circuit, &model, 500, &SeededRng::from_seed(8)).unwrap();
        let b = run_noisy_trajectories(&circuit, &model, 500, &SeededRng::from_seed(8)).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.stats, b.stats);
    }
}
