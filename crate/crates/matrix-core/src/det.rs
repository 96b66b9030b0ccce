//! Determinant kernels: an exact permutation-expansion oracle and the
//! production partial-pivoted elimination routine.

use num_complex::Complex;

use crate::error::{MatrixError, Result};
use crate::matrix::ComplexMatrix;
use crate::{Complex64, NAIVE_LIMIT};

/// Sum over all permutations of the row products, optionally signed.
/// Permutations are enumerated with Heap's algorithm so the summation order
/// is fixed and results are bit-reproducible.
pub(crate) fn permutation_expansion(a: &ComplexMatrix, signed: bool) -> Complex64 {
    let n = a.rows();
    let term = |perm: &[usize], sign: f64| -> Complex64 {
        let mut p = Complex::new(1.0, 0.0);
        for (i, &j) in perm.iter().enumerate() {
            p *= a.get(i, j);
        }
        if signed {
            p * sign
        } else {
            p
        }
    };

    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut sign = 1.0;
    let mut total = term(&perm, sign);

    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            total += term(&perm, sign);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    total
}

pub(crate) fn require_square(a: &ComplexMatrix, op: &'static str, limit: usize) -> Result<usize> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > limit {
        return Err(MatrixError::SizeLimit { op, n, limit });
    }
    Ok(n)
}

/// Exact permutation-expansion determinant. Factorial cost; capped at
/// n <= 9 and used as an oracle for [`det_lu`].
pub fn det_naive(a: &ComplexMatrix) -> Result<Complex64> {
    require_square(a, "det_naive", NAIVE_LIMIT)?;
    Ok(permutation_expansion(a, true))
}

/// Determinant via Gaussian elimination with partial pivoting: product of
/// the pivots with the sign of the row permutation.
pub fn det_lu(a: &ComplexMatrix) -> Result<Complex64> {
    require_square(a, "det_lu", usize::MAX)?;
    let n = a.rows();
    let mut w: Vec<Complex64> = a.entries().to_vec();
    let at = |w: &[Complex64], r: usize, c: usize| w[r * n + c];

    let mut det = Complex::new(1.0, 0.0);
    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = at(&w, k, k).norm();
        for r in (k + 1)..n {
            let mag = at(&w, r, k).norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return Ok(Complex::new(0.0, 0.0));
        }
        if pivot_row != k {
            for c in 0..n {
                w.swap(k * n + c, pivot_row * n + c);
            }
            det = -det;
        }
        let pivot = at(&w, k, k);
        det *= pivot;
        for r in (k + 1)..n {
            let factor = at(&w, r, k) / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for c in k..n {
                let sub = factor * at(&w, k, c);
                w[r * n + c] -= sub;
            }
        }
    }
    Ok(det)
}
