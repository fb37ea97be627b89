use super::{require_square, DenseMatrix, DenseVector, LinalgError, PIVOT_TOL, SINGULAR_DET};

/// Determinant via LU factorisation with partial pivoting.
pub fn determinant(a: &DenseMatrix) -> Result<f64, LinalgError> {
    let n = require_square("determinant", a)?;
    let mut lu = a.clone();
    let mut det = 1.0;
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&x, &y| lu[(x, k)].abs().total_cmp(&lu[(y, k)].abs()))
            .unwrap();
        let pivot = lu[(pivot_row, k)];
        if pivot == 0.0 {
            return Ok(0.0);
        }
        if pivot_row != k {
            swap_rows(&mut lu, k, pivot_row);
            det = -det;
        }
        det *= pivot;
        for i in (k + 1)..n {
            let factor = lu[(i, k)] / pivot;
            if factor != 0.0 {
                for j in (k + 1)..n {
                    let v = lu[(k, j)];
                    lu[(i, j)] -= factor * v;
                }
            }
        }
    }
    Ok(det)
}

/// Gauss-Jordan inverse with partial pivoting. Matrices with
/// `|det| <= 1e-12` are rejected as singular.
pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    require_square("inverse", a)?;
    let det = determinant(a)?;
    if det.abs() <= SINGULAR_DET {
        return Err(LinalgError::Singular { det });
    }
    gauss_jordan(a)
}

/// Inverse of a matrix already known to be invertible, e.g. a product or
/// inverse of validated group elements. Only an exactly zero pivot fails.
pub(crate) fn gauss_jordan(a: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    let n = require_square("inverse", a)?;
    let mut work = a.clone();
    let mut inv = DenseMatrix::identity(n);
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&x, &y| work[(x, k)].abs().total_cmp(&work[(y, k)].abs()))
            .unwrap();
        if pivot_row != k {
            swap_rows(&mut work, k, pivot_row);
            swap_rows(&mut inv, k, pivot_row);
        }
        let pivot = work[(k, k)];
        if pivot == 0.0 {
            return Err(LinalgError::Singular { det: 0.0 });
        }
        for j in 0..n {
            work[(k, j)] /= pivot;
            inv[(k, j)] /= pivot;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = work[(i, k)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = work[(k, j)];
                let v = inv[(k, j)];
                work[(i, j)] -= factor * w;
                inv[(i, j)] -= factor * v;
            }
        }
    }
    Ok(inv)
}

/// Number of pivots found by row reduction with pivot tolerance 1e-9.
pub fn rank(a: &DenseMatrix) -> usize {
    row_reduce(a, PIVOT_TOL).1.len()
}

/// Basis of the null space of `a`, found from its reduced row echelon
/// form. `tol` is relative to the largest entry of `a` (floored at 1).
pub fn null_space(a: &DenseMatrix, tol: f64) -> Vec<DenseVector> {
    let scale = a.max_abs().max(1.0);
    let (rref, pivots) = row_reduce(a, tol * scale);
    let n = a.cols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0.0; n];
        v[free] = 1.0;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rref[(r, free)];
        }
        basis.push(DenseVector::new(v).expect("finite null-space vector"));
    }
    basis
}

/// Reduced row echelon form; returns the reduced matrix and the pivot
/// column of each nonzero row.
fn row_reduce(a: &DenseMatrix, tol: f64) -> (DenseMatrix, Vec<usize>) {
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .max_by(|&x, &y| m[(x, c)].abs().total_cmp(&m[(y, c)].abs()))
            .unwrap();
        if m[(best, c)].abs() <= tol {
            for i in r..rows {
                m[(i, c)] = 0.0;
            }
            continue;
        }
        swap_rows(&mut m, r, best);
        let pivot = m[(r, c)];
        for j in c..cols {
            m[(r, j)] /= pivot;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[(i, c)];
            if factor != 0.0 {
                for j in c..cols {
                    let v = m[(r, j)];
                    m[(i, j)] -= factor * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn swap_rows(m: &mut DenseMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)];
        m[(a, j)] = m[(b, j)];
        m[(b, j)] = t;
    }
}
