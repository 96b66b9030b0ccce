//! Dense row-major complex matrices and column multisets.
//!
//! The JSON form of a matrix is shared by every module and the CLI:
//! `{"rows": n, "cols": m, "entries": [[re, im], ...]}` with entries listed
//! row-major.

use num_complex::Complex;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{MatrixError, Result};
use crate::Complex64;

/// Dense complex matrix, row-major storage. All stored entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. Rejects empty dimensions, length
    /// mismatches, and non-finite entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::InvalidArgument(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MatrixError::NonFinite {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::from_entries(rows, cols, vec![Complex::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = Complex::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// The n x n submatrix selecting column `i` of `self` with multiplicity
    /// `r_i`, columns in non-decreasing column-index order.
    pub fn submatrix(&self, selection: &ColumnMultiset) -> Result<ComplexMatrix> {
        if selection.num_columns() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "multiset is over {} columns but matrix has {}",
                selection.num_columns(),
                self.cols
            )));
        }
        let n = selection.total();
        if n != self.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "multiset selects {n} columns but matrix has {} rows",
                self.rows
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in 0..n {
            for (col, &rep) in selection.repetitions().iter().enumerate() {
                for _ in 0..rep {
                    entries.push(self.get(row, col));
                }
            }
        }
        ComplexMatrix::from_entries(n, n, entries)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for col in 0..self.cols {
            for row in 0..self.rows {
                entries.push(self.get(row, col).conj());
            }
        }
        ComplexMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Gram matrix of the rows, `M M†`.
    pub fn row_gram(&self) -> ComplexMatrix {
        let n = self.rows;
        let mut g = ComplexMatrix {
            rows: n,
            cols: n,
            entries: vec![Complex::new(0.0, 0.0); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.get(i, k) * self.get(j, k).conj();
                }
                g.entries[i * n + j] = acc;
            }
        }
        g
    }

    /// Max absolute difference from the identity, used by orthonormality checks.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { 1.0 } else { 0.0 };
                let d = (self.get(i, j) - Complex::new(target, 0.0)).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<(f64, f64)>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| (z.re, z.im)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        let entries = wire
            .entries
            .into_iter()
            .map(|(re, im)| Complex::new(re, im))
            .collect();
        ComplexMatrix::from_entries(wire.rows, wire.cols, entries).map_err(de::Error::custom)
    }
}

/// A sub-multiset of the columns of an n x m matrix, stored as per-column
/// repetition counts r_1..r_m with sum n. A plain column subset is the
/// special case r_i in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColumnMultiset {
    repetitions: Vec<usize>,
}

impl ColumnMultiset {
    pub fn from_repetitions(repetitions: Vec<usize>) -> Self {
        Self { repetitions }
    }

    /// Build from 0-based column indices (repeats allowed, any order).
    pub fn from_indices(num_columns: usize, indices: &[usize]) -> Result<Self> {
        let mut repetitions = vec![0usize; num_columns];
        for &i in indices {
            if i >= num_columns {
                return Err(MatrixError::InvalidArgument(format!(
                    "column index {i} out of range for {num_columns} columns"
                )));
            }
            repetitions[i] += 1;
        }
        Ok(Self { repetitions })
    }

    pub fn repetitions(&self) -> &[usize] {
        &self.repetitions
    }

    pub fn num_columns(&self) -> usize {
        self.repetitions.len()
    }

    /// Total number of selected columns, counted with multiplicity.
    pub fn total(&self) -> usize {
        self.repetitions.iter().sum()
    }

    /// Product of the factorials of the repetition counts.
    pub fn repetition_factorial(&self) -> f64 {
        self.repetitions
            .iter()
            .map(|&r| (1..=r).map(|k| k as f64).product::<f64>())
            .product()
    }

    /// 0-based column indices with multiplicity, non-decreasing.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total());
        for (col, &rep) in self.repetitions.iter().enumerate() {
            for _ in 0..rep {
                out.push(col);
            }
        }
        out
    }

    /// Human-readable 1-based label such as `2+2` or `1+3`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        if parts.is_empty() {
            "-".to_string()
        } else {
            parts.join("+")
        }
    }
}
