//! Dense complex linear algebra for small matrices.
//!
//! Provides exactly what the bound computations need: matrix arithmetic over
//! `Complex64`, a cyclic Jacobi eigensolver for Hermitian matrices, a PSD
//! square root, and singular values. Dimensions are expected to stay small
//! (≲ 16), so everything is plain O(n³) dense code with no blocking.

mod eigen;
mod matrix;

pub use eigen::{eigh, psd_sqrt, singular_values, HermEigen};
pub use matrix::{frobenius_inner, CMatrix};

pub(crate) use matrix::trace_prod;

use thiserror::Error;

/// Relative tolerance for accepting a matrix as Hermitian:
/// `‖H − H†‖_F ≤ tol · max(1, ‖H‖_F)`.
pub const HERMITICITY_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    ZeroDimension { rows: usize, cols: usize },
    #[error("entry buffer of length {got} does not match a {rows}x{cols} matrix")]
    EntryCountMismatch {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian within tolerance (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("shape mismatch between {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("eigenvalue {value:.3e} is below the PSD tolerance")]
    NegativeEigenvalue { value: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}
