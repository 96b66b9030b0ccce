//! Dense complex matrices with exact permanent/determinant kernels and
//! seeded random ensembles.
//!
//! Everything here is a pure function of its inputs plus an explicit
//! [`SeededRng`]; there is no shared mutable state.

mod det;
mod ensemble;
mod error;
mod matrix;
mod perm;
mod rng;

pub use det::{det_lu, det_naive};
pub use ensemble::{gaussian_matrix, haar_rows, orthonormalize_rows};
pub use error::{MatrixError, Result};
pub use matrix::{ColumnMultiset, ComplexMatrix};
pub use perm::{per_naive, per_ryser};
pub use rng::{derive_seed, SeededRng};

pub type Complex64 = num_complex::Complex<f64>;

/// Cap for the factorial-cost naive kernels.
pub const NAIVE_LIMIT: usize = 9;
/// Cap for Ryser's O(2^n n) permanent.
pub const RYSER_LIMIT: usize = 30;

/// The bundled 2x3 demonstration matrix whose fermion probabilities are
/// (1/6, 1/6, 4/6) and boson probabilities (0, 1/6, 1/6, 2/6, 0, 2/6).
pub fn demo_matrix_2x3() -> ComplexMatrix {
    let s3 = 1.0 / 3.0f64.sqrt();
    let s2 = 1.0 / 2.0f64.sqrt();
    ComplexMatrix::from_entries(
        2,
        3,
        vec![
            Complex64::new(s3, 0.0),
            Complex64::new(0.0, s3),
            Complex64::new(s3, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s2, 0.0),
            Complex64::new(0.0, s2),
        ],
    )
    .expect("demo matrix is well formed")
}
