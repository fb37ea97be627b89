//! Dense real linear algebra used by the retrieval model and the group
//! actions: products, LU-based determinants and inverses, Jacobi and
//! Hessenberg-QR eigensolvers, Householder reflections and change of basis.
//!
//! Everything here is a pure function over immutable values.

mod eigen;
mod lu;
mod matrix;
mod ops;
pub mod text;

pub use eigen::{diagonalize, symmetric_eigen, Diagonalization, EigenDecomposition};
pub(crate) use lu::gauss_jordan;
pub use lu::{determinant, inverse, null_space, rank};
pub use matrix::{DenseMatrix, DenseVector};
pub use ops::{change_of_basis, householder, mat_mul};

use thiserror::Error;

/// Matrices with `|det| <= SINGULAR_DET` are treated as singular.
pub const SINGULAR_DET: f64 = 1e-12;
/// Tolerance for structural checks: orthogonality, symmetry, unit norms.
pub const STRUCTURAL_TOL: f64 = 1e-9;
/// Pivot threshold used by row reduction.
pub const PIVOT_TOL: f64 = 1e-9;
/// Off-diagonal threshold at which Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-12;
/// Eigenvalue comparison tolerance.
pub const EIGEN_TOL: f64 = 1e-7;

/// Why a matrix failed to diagonalize over the reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonDiagonalizable {
    /// At least one eigenvalue pair is complex.
    ComplexSpectrum,
    /// Real spectrum, but the eigenvectors span fewer than `n` dimensions.
    Defective,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("{op}: incompatible shapes {}x{} and {}x{}", left.0, left.1, right.0, right.1)]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: expected a square matrix, got {}x{}", shape.0, shape.1)]
    NotSquare {
        op: &'static str,
        shape: (usize, usize),
    },
    #[error("matrix dimensions must be positive")]
    EmptyDimension,
    #[error("expected {rows}x{cols} = {} entries, found {found}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("non-finite entry {value} at ({row}, {col})")]
    NonFinite { row: usize, col: usize, value: f64 },
    #[error("singular matrix (|det| = {det:e} <= {SINGULAR_DET:e})")]
    Singular { det: f64 },
    #[error("matrix is not symmetric: max |a[i,j] - a[j,i]| = {max_deviation:e}")]
    NotSymmetric { max_deviation: f64 },
    #[error("householder vector must have unit norm, got ||u|| = {norm}")]
    NotUnit { norm: f64 },
    #[error("not diagonalizable over the reals: {}", match .0 {
        NonDiagonalizable::ComplexSpectrum => "complex spectrum",
        NonDiagonalizable::Defective => "defective (rank-deficient eigenspace)",
    })]
    NotDiagonalizable(NonDiagonalizable),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("matrix text, line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub(crate) fn require_square(op: &'static str, a: &DenseMatrix) -> Result<usize, LinalgError> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(LinalgError::NotSquare {
            op,
            shape: a.shape(),
        })
    }
}
