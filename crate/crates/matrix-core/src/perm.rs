//! Permanent kernels.
//!
//! [`per_naive`] is the factorial-cost permutation expansion used as an
//! oracle. [`per_ryser`] is the production kernel: Ryser's inclusion-
//! exclusion over column subsets,
//!
//! ```text
//! per(A) = (-1)^n * sum_{S != {}} (-1)^|S| * prod_i sum_{j in S} a_ij
//! ```
//!
//! walked in Gray-code order so each subset costs one column update, O(2^n n)
//! total. The subset sequence is fixed, which makes the floating-point result
//! bit-reproducible.

use num_complex::Complex;

use crate::det::{permutation_expansion, require_square};
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::{Complex64, NAIVE_LIMIT, RYSER_LIMIT};

/// Exact permutation-expansion permanent, capped at n <= 9.
pub fn per_naive(a: &ComplexMatrix) -> Result<Complex64> {
    require_square(a, "per_naive", NAIVE_LIMIT)?;
    Ok(permutation_expansion(a, false))
}

/// Ryser's algorithm with Gray-code subset enumeration, capped at n <= 30.
pub fn per_ryser(a: &ComplexMatrix) -> Result<Complex64> {
    let n = require_square(a, "per_ryser", RYSER_LIMIT)?;

    let mut row_sums = vec![Complex::new(0.0, 0.0); n];
    let mut total = Complex::new(0.0, 0.0);
    let mut prev_gray: u64 = 0;

    for k in 1u64..(1u64 << n) {
        let gray = k ^ (k >> 1);
        let flipped = (gray ^ prev_gray).trailing_zeros() as usize;
        if gray & (gray ^ prev_gray) != 0 {
            for i in 0..n {
                row_sums[i] += a.get(i, flipped);
            }
        } else {
            for i in 0..n {
                row_sums[i] -= a.get(i, flipped);
            }
        }
        prev_gray = gray;

        let mut product = Complex::new(1.0, 0.0);
        for s in &row_sums {
            product *= s;
        }
        // (-1)^n (-1)^|S| = (-1)^(n - |S|)
        if (n as u32 - gray.count_ones()) % 2 == 0 {
            total += product;
        } else {
            total -= product;
        }
    }
    Ok(total)
}
