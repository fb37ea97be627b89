use super::{inverse, require_square, DenseMatrix, DenseVector, LinalgError, STRUCTURAL_TOL};

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if a.cols() != b.rows() {
        return Err(LinalgError::Shape {
            op: "mat_mul",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut out = DenseMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            for j in 0..b.cols() {
                out[(i, j)] += aik * b[(k, j)];
            }
        }
    }
    Ok(out)
}

/// Reflection through the hyperplane orthogonal to the unit vector `u`:
/// `H = I - 2 u uᵀ`.
///
/// The outer product is divided by `uᵀu`. For a unit `u` this is the same
/// matrix, but it keeps entries such as `1 - 2·(√2/2)²` exactly zero.
pub fn householder(u: &DenseVector) -> Result<DenseMatrix, LinalgError> {
    let norm_sq = u.dot(u);
    let norm = norm_sq.sqrt();
    if (norm - 1.0).abs() > STRUCTURAL_TOL {
        return Err(LinalgError::NotUnit { norm });
    }
    let n = u.dim();
    let mut h = DenseMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] -= 2.0 * u[i] * u[j] / norm_sq;
        }
    }
    Ok(h)
}

/// Matrix of the same operator in the basis whose transition matrix to
/// the current basis is `s`: `S⁻¹ · T · S`.
pub fn change_of_basis(t_b: &DenseMatrix, s: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    let n = require_square("change_of_basis", t_b)?;
    let m = require_square("change_of_basis", s)?;
    if n != m {
        return Err(LinalgError::Shape {
            op: "change_of_basis",
            left: t_b.shape(),
            right: s.shape(),
        });
    }
    let s_inv = inverse(s)?;
    mat_mul(&mat_mul(&s_inv, t_b)?, s)
}
