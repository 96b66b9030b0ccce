//! Random matrix ensembles.

use num_complex::Complex;

use crate::error::{MatrixError, Result};
use crate::matrix::ComplexMatrix;
use crate::rng::SeededRng;
use crate::Complex64;

/// i.i.d. standard complex Gaussian entries: mean 0, E|a_ij|^2 = 1
/// (real and imaginary parts each of variance 1/2).
pub fn gaussian_matrix(n: usize, m: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let entries: Vec<Complex64> = (0..n * m).map(|_| rng.standard_complex()).collect();
    ComplexMatrix::from_entries(n, m, entries).expect("gaussian entries are finite")
}

/// n rows of a Haar-random m x m unitary, n <= m.
///
/// Construction: Gaussian n x m matrix, then row-wise QR (Gram-Schmidt on the
/// rows) with the triangular factor's diagonal kept real positive; that phase
/// convention is what makes the result Haar rather than merely orthonormal.
pub fn haar_rows(n: usize, m: usize, rng: &mut SeededRng) -> Result<ComplexMatrix> {
    if n > m {
        return Err(MatrixError::InvalidArgument(format!(
            "haar_rows needs n <= m, got n={n}, m={m}"
        )));
    }
    let g = gaussian_matrix(n, m, rng);
    orthonormalize_rows(&g)
}

/// Row-wise Gram-Schmidt with a second re-orthogonalization pass. Normalizing
/// by the (positive real) row norms fixes the QR phase convention.
pub fn orthonormalize_rows(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.rows() > m.cols() {
        return Err(MatrixError::InvalidArgument(format!(
            "cannot orthonormalize {} rows of length {}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let width = m.cols();
    let mut rows: Vec<Vec<Complex64>> = (0..n).map(|r| m.row(r).to_vec()).collect();

    for i in 0..n {
        // Two passes keep orthogonality at the 1e-14 level.
        for _ in 0..2 {
            for j in 0..i {
                let mut overlap = Complex::new(0.0, 0.0);
                for k in 0..width {
                    overlap += rows[j][k].conj() * rows[i][k];
                }
                for k in 0..width {
                    let sub = overlap * rows[j][k];
                    rows[i][k] -= sub;
                }
            }
        }
        let norm: f64 = rows[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(MatrixError::InvalidArgument(
                "rank-deficient input to row orthonormalization".to_string(),
            ));
        }
        for k in 0..width {
            rows[i][k] /= norm;
        }
    }

    let entries: Vec<Complex64> = rows.into_iter().flatten().collect();
    ComplexMatrix::from_entries(n, width, entries)
}
