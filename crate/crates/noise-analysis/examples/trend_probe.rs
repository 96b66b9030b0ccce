//! Scratch probe for the Theorem-2-style trend at desk scale.

use matrix_core::SeededRng;
use noise_analysis::{
    sensitivity_sweep, EpsilonSpec, InputEnsemble, ModeRule, SweepConfig,
};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(42);
    let inputs: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(10);
    let mc: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(500);
    let rule = match args.get(4).map(String::as_str) {
        Some("2n") => ModeRule::TwiceN,
        _ => ModeRule::QuadraticPlusN,
    };
    let reorth = args.get(5).map(String::as_str) == Some("reorth");

    let rng = SeededRng::from_seed(seed);
    let t0 = std::time::Instant::now();

    let fixed = SweepConfig {
        ensemble: InputEnsemble::Gaussian,
        mode_rule: rule,
        n_values: vec![2, 3, 4],
        epsilons: EpsilonSpec::List(vec![0.2]),
        inputs_per_cell: inputs,
        mc_samples: mc,
        reorthonormalize: reorth,
    };
    let curve = sensitivity_sweep(&fixed, &rng).unwrap();
    println!("fixed eps=0.2 (seed {seed}, inputs {inputs}, mc {mc}, rule {rule:?}, reorth {reorth}):");
    for c in &curve.cells {
        println!(
            "  n={} m={:2} eps={:.4}  corr={:.4} +- {:.4}  tv={:.4}",
            c.n, c.m, c.epsilon, c.correlation, c.stderr, c.tv
        );
    }

    let scaled = SweepConfig {
        epsilons: EpsilonSpec::ScaledInverseN { coefficient: 0.4 },
        ..fixed
    };
    let curve2 = sensitivity_sweep(&scaled, &rng.substream("second", 0)).unwrap();
    println!("scaled eps=0.4/n:");
    for c in &curve2.cells {
        println!(
            "  n={} m={:2} eps={:.4}  corr={:.4} +- {:.4}  tv={:.4}",
            c.n, c.m, c.epsilon, c.correlation, c.stderr, c.tv
        );
    }
    println!("elapsed: {:.1?}", t0.elapsed());
}
