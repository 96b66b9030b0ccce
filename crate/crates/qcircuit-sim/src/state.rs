//! Pure states and density matrices with in-place operator application.
//!
//! Basis convention: qubit q corresponds to bit q of the computational basis
//! index (qubit 0 is the least-significant bit). For a k-qubit operator on
//! `targets`, `targets[0]` is the most-significant bit of the operator's own
//! 2^k-dimensional basis, so a CNOT on targets [c, t] reads |c t>.

use num_complex::Complex;

use crate::error::{CircuitError, Result};
use crate::Complex64;

/// Density matrices are capped at 10 qubits (4^10 entries).
pub const MAX_DENSITY_QUBITS: usize = 10;
/// Pure-state trajectories are capped at 20 qubits.
pub const MAX_PURE_QUBITS: usize = 20;

/// Apply a dense 2^k x 2^k operator (row-major) to the amplitudes of the
/// given target qubits. Works for any operator, not just unitaries.
pub(crate) fn apply_operator_to_vec(
    amps: &mut [Complex64],
    n_qubits: usize,
    targets: &[usize],
    op: &[Complex64],
) {
    let k = targets.len();
    let block = 1usize << k;
    debug_assert_eq!(op.len(), block * block);
    debug_assert!(targets.iter().all(|&t| t < n_qubits));

    // bit of the full index contributed by gate-local basis bit j
    let masks: Vec<usize> = (0..k).map(|j| 1usize << targets[k - 1 - j]).collect();
    let target_union: usize = masks.iter().sum();

    let mut gathered = vec![Complex::new(0.0, 0.0); block];
    let dim = 1usize << n_qubits;
    for base in 0..dim {
        if base & target_union != 0 {
            continue;
        }
        for (j, slot) in gathered.iter_mut().enumerate() {
            let mut idx = base;
            for (bit, mask) in masks.iter().enumerate() {
                if j & (1 << bit) != 0 {
                    idx |= mask;
                }
            }
            *slot = amps[idx];
        }
        for row in 0..block {
            let mut acc = Complex::new(0.0, 0.0);
            for (col, g) in gathered.iter().enumerate() {
                acc += op[row * block + col] * g;
            }
            let mut idx = base;
            for (bit, mask) in masks.iter().enumerate() {
                if row & (1 << bit) != 0 {
                    idx |= mask;
                }
            }
            amps[idx] = acc;
        }
    }
}

fn conjugated(op: &[Complex64]) -> Vec<Complex64> {
    op.iter().map(|z| z.conj()).collect()
}

/// A pure n-qubit state: 2^n amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// |0...0>.
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        let mut amps = vec![Complex::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_cap(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        if amps.len() != 1 << n_qubits {
            return Err(CircuitError::InvalidArgument(format!(
                "expected {} amplitudes, got {}",
                1usize << n_qubits,
                amps.len()
            )));
        }
        let state = Self { n_qubits, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(CircuitError::NumericalContract(format!(
                "state norm {norm} deviates from 1"
            )));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub(crate) fn apply_operator(&mut self, targets: &[usize], op: &[Complex64]) {
        apply_operator_to_vec(&mut self.amps, self.n_qubits, targets, op);
    }

    /// Reduced 2x2 density matrix of one qubit, row-major.
    pub fn reduced_qubit(&self, qubit: usize) -> Result<[Complex64; 4]> {
        if qubit >= self.n_qubits {
            return Err(CircuitError::InvalidArgument(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        let mask = 1usize << qubit;
        let mut rho = [Complex::new(0.0, 0.0); 4];
        for (i, a) in self.amps.iter().enumerate() {
            if i & mask == 0 {
                let b = self.amps[i | mask];
                rho[0] += a * a.conj();
                rho[1] += a * b.conj();
                rho[2] += b * a.conj();
                rho[3] += b * b.conj();
            }
        }
        Ok(rho)
    }

    pub fn to_density(&self) -> Result<DensityState> {
        check_cap(self.n_qubits, MAX_DENSITY_QUBITS, "density state")?;
        let dim = 1usize << self.n_qubits;
        let mut mat = vec![Complex::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                mat[r * dim + c] = self.amps[r] * self.amps[c].conj();
            }
        }
        Ok(DensityState {
            n_qubits: self.n_qubits,
            mat,
        })
    }
}

/// A mixed n-qubit state: Hermitian trace-one 2^n x 2^n matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    n_qubits: usize,
    mat: Vec<Complex64>,
}

impl DensityState {
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits, MAX_DENSITY_QUBITS, "density state")?;
        let dim = 1usize << n_qubits;
        let mut mat = vec![Complex::new(0.0, 0.0); dim * dim];
        mat[0] = Complex::new(1.0, 0.0);
        Ok(Self { n_qubits, mat })
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits, MAX_DENSITY_QUBITS, "density state")?;
        let dim = 1usize << n_qubits;
        let mut mat = vec![Complex::new(0.0, 0.0); dim * dim];
        let p = 1.0 / dim as f64;
        for i in 0..dim {
            mat[i * dim + i] = Complex::new(p, 0.0);
        }
        Ok(Self { n_qubits, mat })
    }

    pub fn from_matrix(n_qubits: usize, mat: Vec<Complex64>) -> Result<Self> {
        check_cap(n_qubits, MAX_DENSITY_QUBITS, "density state")?;
        let dim = 1usize << n_qubits;
        if mat.len() != dim * dim {
            return Err(CircuitError::InvalidArgument(format!(
                "expected {} entries, got {}",
                dim * dim,
                mat.len()
            )));
        }
        let state = Self { n_qubits, mat };
        if state.hermiticity_error() > 1e-10 {
            return Err(CircuitError::NumericalContract(
                "matrix is not Hermitian".to_string(),
            ));
        }
        let trace = state.trace();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(CircuitError::NumericalContract(format!(
                "trace {trace} deviates from 1"
            )));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.mat[row * self.dim() + col]
    }

    pub fn trace(&self) -> f64 {
        let dim = self.dim();
        (0..dim).map(|i| self.mat[i * dim + i].re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                let d = (self.mat[r * dim + c] - self.mat[c * dim + r].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// rho -> (op x I) rho (op x I)^dagger on the target qubits.
    pub(crate) fn apply_operator(&mut self, targets: &[usize], op: &[Complex64]) {
        let dim = self.dim();
        // left action: transform each column as a vector over row indices
        let mut column = vec![Complex::new(0.0, 0.0); dim];
        for c in 0..dim {
            for r in 0..dim {
                column[r] = self.mat[r * dim + c];
            }
            apply_operator_to_vec(&mut column, self.n_qubits, targets, op);
            for r in 0..dim {
                self.mat[r * dim + c] = column[r];
            }
        }
        // right action by the conjugate: transform each row
        let conj = conjugated(op);
        for r in 0..dim {
            let row = &mut self.mat[r * dim..(r + 1) * dim];
            apply_operator_to_vec(row, self.n_qubits, targets, &conj);
        }
    }

    /// Trace out one qubit, leaving an (n-1)-qubit state.
    pub fn partial_trace_qubit(&self, qubit: usize) -> Result<DensityState> {
        if qubit >= self.n_qubits {
            return Err(CircuitError::InvalidArgument(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        if self.n_qubits == 1 {
            return Err(CircuitError::InvalidArgument(
                "cannot trace out the only qubit".to_string(),
            ));
        }
        let dim = self.dim();
        let small = dim / 2;
        let mask = 1usize << qubit;
        let expand = |idx: usize, bit: usize| -> usize {
            let low = idx & (mask - 1);
            let high = (idx & !(mask - 1)) << 1;
            high | (bit * mask) | low
        };
        let mut mat = vec![Complex::new(0.0, 0.0); small * small];
        for r in 0..small {
            for c in 0..small {
                let mut acc = Complex::new(0.0, 0.0);
                for bit in 0..2 {
                    acc += self.mat[expand(r, bit) * dim + expand(c, bit)];
                }
                mat[r * small + c] = acc;
            }
        }
        Ok(DensityState {
            n_qubits: self.n_qubits - 1,
            mat,
        })
    }

    /// Replace the target qubit by the maximally mixed state:
    /// rho -> I/2 (x) tr_q rho, with probability weight `p` against the
    /// original.
    pub(crate) fn mix_qubit_to_identity(&self, qubit: usize, p: f64) -> Result<DensityState> {
        let reduced = self.partial_trace_qubit(qubit)?;
        let dim = self.dim();
        let small = dim / 2;
        let mask = 1usize << qubit;
        let compress = |idx: usize| -> usize { (idx & (mask - 1)) | ((idx >> 1) & !(mask - 1)) };
        let mut mat = vec![Complex::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let keep = self.mat[r * dim + c] * (1.0 - p);
                let mixed = if (r & mask) == (c & mask) {
                    reduced.mat[compress(r) * small + compress(c)] * 0.5
                } else {
                    Complex::new(0.0, 0.0)
                };
                mat[r * dim + c] = keep + mixed * p;
            }
        }
        Ok(DensityState {
            n_qubits: self.n_qubits,
            mat,
        })
    }

    /// Eigenvalues of the (Hermitian) matrix, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        crate::distance::hermitian_eigenvalues(self.n_qubits, &self.mat)
    }

    /// Von Neumann entropy in bits; eigenvalues below 1e-12 contribute 0.
    pub fn von_neumann_entropy_bits(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .map(|&l| if l > 1e-12 { -l * l.log2() } else { 0.0 })
            .sum()
    }
}

fn check_cap(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(CircuitError::InvalidArgument(format!(
            "{what} needs at least one qubit"
        )));
    }
    if n > cap {
        return Err(CircuitError::QubitCap { what, n, cap });
    }
    Ok(())
}
