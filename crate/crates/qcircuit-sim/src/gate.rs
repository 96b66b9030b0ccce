//! Gates, circuits, and the circuit JSON format:
//! `[{"gate": "h"|"t"|"x"|"y"|"z"|"cnot"|"u1"|"u2", "targets": [..],
//!    "matrix": [[re,im], ...]?}]`
//! with `matrix` given row-major for the custom u1 (2x2) and u2 (4x4) kinds.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CircuitError, Result};
use crate::state::{DensityState, PureState};
use crate::Complex64;

const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Hadamard,
    PhaseT,
    PauliX,
    PauliY,
    PauliZ,
    Cnot,
    Unitary1(Vec<Complex64>),
    Unitary2(Vec<Complex64>),
}

impl GateKind {
    fn name(&self) -> &'static str {
        match self {
            GateKind::Hadamard => "h",
            GateKind::PhaseT => "t",
            GateKind::PauliX => "x",
            GateKind::PauliY => "y",
            GateKind::PauliZ => "z",
            GateKind::Cnot => "cnot",
            GateKind::Unitary1(_) => "u1",
            GateKind::Unitary2(_) => "u2",
        }
    }
}

/// One gate application: a named unitary and its target qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
}

impl Gate {
    pub fn hadamard(q: usize) -> Self {
        Self {
            kind: GateKind::Hadamard,
            targets: vec![q],
        }
    }

    pub fn phase_t(q: usize) -> Self {
        Self {
            kind: GateKind::PhaseT,
            targets: vec![q],
        }
    }

    pub fn pauli_x(q: usize) -> Self {
        Self {
            kind: GateKind::PauliX,
            targets: vec![q],
        }
    }

    pub fn pauli_y(q: usize) -> Self {
        Self {
            kind: GateKind::PauliY,
            targets: vec![q],
        }
    }

    pub fn pauli_z(q: usize) -> Self {
        Self {
            kind: GateKind::PauliZ,
            targets: vec![q],
        }
    }

    /// targets read |control target>.
    pub fn cnot(control: usize, target: usize) -> Self {
        Self {
            kind: GateKind::Cnot,
            targets: vec![control, target],
        }
    }

    /// Arbitrary single-qubit unitary, row-major 2x2.
    pub fn unitary1(q: usize, matrix: Vec<Complex64>) -> Result<Self> {
        check_unitary(&matrix, 2)?;
        Ok(Self {
            kind: GateKind::Unitary1(matrix),
            targets: vec![q],
        })
    }

    /// Arbitrary two-qubit unitary, row-major 4x4 over |q1 q2>.
    pub fn unitary2(q1: usize, q2: usize, matrix: Vec<Complex64>) -> Result<Self> {
        check_unitary(&matrix, 4)?;
        Ok(Self {
            kind: GateKind::Unitary2(matrix),
            targets: vec![q1, q2],
        })
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    /// Row-major matrix, 2x2 or 4x4.
    pub fn matrix(&self) -> Vec<Complex64> {
        let r = |x: f64| Complex::new(x, 0.0);
        match &self.kind {
            GateKind::Hadamard => vec![
                r(FRAC_1_SQRT_2),
                r(FRAC_1_SQRT_2),
                r(FRAC_1_SQRT_2),
                r(-FRAC_1_SQRT_2),
            ],
            GateKind::PhaseT => vec![
                r(1.0),
                r(0.0),
                r(0.0),
                Complex::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ],
            GateKind::PauliX => vec![r(0.0), r(1.0), r(1.0), r(0.0)],
            GateKind::PauliY => vec![
                r(0.0),
                Complex::new(0.0, -1.0),
                Complex::new(0.0, 1.0),
                r(0.0),
            ],
            GateKind::PauliZ => vec![r(1.0), r(0.0), r(0.0), r(-1.0)],
            GateKind::Cnot => {
                let mut m = vec![r(0.0); 16];
                m[0] = r(1.0);
                m[5] = r(1.0);
                m[11] = r(1.0);
                m[14] = r(1.0);
                m
            }
            GateKind::Unitary1(m) | GateKind::Unitary2(m) => m.clone(),
        }
    }

    fn validate_targets(&self, n_qubits: usize) -> Result<()> {
        for &t in &self.targets {
            if t >= n_qubits {
                return Err(CircuitError::InvalidArgument(format!(
                    "gate {} targets qubit {t} but the register has {n_qubits}",
                    self.kind.name()
                )));
            }
        }
        if self.targets.len() == 2 && self.targets[0] == self.targets[1] {
            return Err(CircuitError::InvalidArgument(format!(
                "gate {} targets the same qubit twice",
                self.kind.name()
            )));
        }
        Ok(())
    }
}

fn check_unitary(matrix: &[Complex64], dim: usize) -> Result<()> {
    if matrix.len() != dim * dim {
        return Err(CircuitError::InvalidArgument(format!(
            "expected a {dim}x{dim} matrix, got {} entries",
            matrix.len()
        )));
    }
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..dim {
                acc += matrix[k * dim + r].conj() * matrix[k * dim + c];
            }
            let target = if r == c { 1.0 } else { 0.0 };
            if (acc - Complex::new(target, 0.0)).norm() > UNITARITY_TOLERANCE {
                return Err(CircuitError::InvalidArgument(
                    "matrix is not unitary".to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// Apply a gate to a pure or mixed state; norm/trace are preserved.
pub fn apply_gate_pure(state: &mut PureState, gate: &Gate) -> Result<()> {
    gate.validate_targets(state.n_qubits())?;
    state.apply_operator(gate.targets(), &gate.matrix());
    Ok(())
}

pub fn apply_gate_density(state: &mut DensityState, gate: &Gate) -> Result<()> {
    gate.validate_targets(state.n_qubits())?;
    state.apply_operator(gate.targets(), &gate.matrix());
    Ok(())
}

/// An ordered sequence of gates, one unitary per step.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    steps: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, steps: Vec<Gate>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(CircuitError::InvalidArgument(
                "circuit needs at least one qubit".to_string(),
            ));
        }
        for gate in &steps {
            gate.validate_targets(n_qubits)?;
        }
        Ok(Self { n_qubits, steps })
    }

    /// Identity-evolution circuit of the given depth.
    pub fn idle(n_qubits: usize, depth: usize) -> Result<Self> {
        let identity = vec![
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        ];
        let steps = (0..depth)
            .map(|_| Gate::unitary1(0, identity.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_qubits, steps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn steps(&self) -> &[Gate] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn run_pure(&self, initial: &PureState) -> Result<PureState> {
        let mut state = initial.clone();
        for gate in &self.steps {
            apply_gate_pure(&mut state, gate)?;
        }
        Ok(state)
    }

    /// Parse from the JSON gate list. When `n_qubits` is absent it is
    /// inferred as one past the highest target index.
    pub fn from_json(text: &str, n_qubits: Option<usize>) -> Result<Self> {
        let wires: Vec<GateWire> =
            serde_json::from_str(text).map_err(|e| CircuitError::Parse(e.to_string()))?;
        let gates = wires
            .into_iter()
            .map(GateWire::into_gate)
            .collect::<Result<Vec<_>>>()?;
        let inferred = gates
            .iter()
            .flat_map(|g| g.targets().iter().copied())
            .max()
            .map_or(1, |m| m + 1);
        Self::new(n_qubits.unwrap_or(inferred), gates)
    }

    pub fn to_json(&self) -> String {
        let wires: Vec<GateWire> = self.steps.iter().map(GateWire::from_gate).collect();
        serde_json::to_string_pretty(&wires).expect("gate list serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct GateWire {
    gate: String,
    targets: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<(f64, f64)>>,
}

impl GateWire {
    fn from_gate(gate: &Gate) -> Self {
        let matrix = match gate.kind() {
            GateKind::Unitary1(m) | GateKind::Unitary2(m) => {
                Some(m.iter().map(|z| (z.re, z.im)).collect())
            }
            _ => None,
        };
        Self {
            gate: gate.kind().name().to_string(),
            targets: gate.targets().to_vec(),
            matrix,
        }
    }

    fn into_gate(self) -> Result<Gate> {
        let arity_err = |want: usize, got: usize, name: &str| {
            CircuitError::Parse(format!("gate {name} wants {want} targets, got {got}"))
        };
        let t = &self.targets;
        let complexes = |pairs: Option<Vec<(f64, f64)>>| -> Result<Vec<Complex64>> {
            pairs
                .ok_or_else(|| CircuitError::Parse("custom gate needs a matrix".to_string()))
                .map(|v| v.into_iter().map(|(re, im)| Complex::new(re, im)).collect())
        };
        match self.gate.as_str() {
            "h" | "t" | "x" | "y" | "z" => {
                if t.len() != 1 {
                    return Err(arity_err(1, t.len(), &self.gate));
                }
                Ok(match self.gate.as_str() {
                    "h" => Gate::hadamard(t[0]),
                    "t" => Gate::phase_t(t[0]),
                    "x" => Gate::pauli_x(t[0]),
                    "y" => Gate::pauli_y(t[0]),
                    _ => Gate::pauli_z(t[0]),
                })
            }
            "cnot" => {
                if t.len() != 2 {
                    return Err(arity_err(2, t.len(), "cnot"));
                }
                Ok(Gate::cnot(t[0], t[1]))
            }
            "u1" => {
                if t.len() != 1 {
                    return Err(arity_err(1, t.len(), "u1"));
                }
                Gate::unitary1(t[0], complexes(self.matrix)?)
            }
            "u2" => {
                if t.len() != 2 {
                    return Err(arity_err(2, t.len(), "u2"));
                }
                Gate::unitary2(t[0], t[1], complexes(self.matrix)?)
            }
            other => Err(CircuitError::Parse(format!("unknown gate kind {other:?}"))),
        }
    }
}
