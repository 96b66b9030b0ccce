//! Built-in matrices and circuits addressable by name.

use matrix_core::ComplexMatrix;
use qcircuit_sim::{Circuit, Gate};

use crate::config::CircuitSource;

/// "demo-2x3": the bundled 2x3 matrix with fermion probabilities
/// (1/6, 1/6, 4/6) and boson probabilities (0, 1/6, 1/6, 2/6, 0, 2/6).
pub fn matrix(name: &str) -> Result<ComplexMatrix, String> {
    match name {
        "demo-2x3" => Ok(matrix_core::demo_matrix_2x3()),
        other => Err(format!("unknown built-in matrix {other:?}")),
    }
}

pub fn matrix_names() -> &'static [&'static str] {
    &["demo-2x3"]
}

/// "bell" (H then CNOT) or "ghz-<n>".
pub fn builtin_circuit(name: &str) -> Result<Circuit, String> {
    if name == "bell" {
        return Circuit::new(2, vec![Gate::hadamard(0), Gate::cnot(0, 1)])
            .map_err(|e| e.to_string());
    }
    if let Some(rest) = name.strip_prefix("ghz-") {
        let n: usize = rest
            .parse()
            .map_err(|_| format!("bad ghz size in {name:?}"))?;
        if n < 2 {
            return Err("ghz needs at least 2 qubits".to_string());
        }
        let mut steps = vec![Gate::hadamard(0)];
        steps.extend((1..n).map(|q| Gate::cnot(0, q)));
        return Circuit::new(n, steps).map_err(|e| e.to_string());
    }
    Err(format!("unknown built-in circuit {name:?}"))
}

pub fn circuit(source: &CircuitSource, n_override: Option<usize>) -> Result<Circuit, String> {
    match source {
        CircuitSource::Builtin(name) => builtin_circuit(name),
        CircuitSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            Circuit::from_json(&text, n_override).map_err(|e| e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_matrix_resolves() {
        let m = matrix("demo-2x3").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert!(matrix("nope").is_err());
    }

    #[test]
    fn ghz_circuit_parses_width() {
        let c = builtin_circuit("ghz-5").unwrap();
        assert_eq!(c.n_qubits(), 5);
        assert_eq!(c.depth(), 5);
        assert!(builtin_circuit("ghz-x").is_err());
        assert!(builtin_circuit("ghz-1").is_err());
    }
}
