#![allow(clippy::needless_range_loop)]

use super::{
    mat_mul, null_space, rank, require_square, DenseMatrix, DenseVector, LinalgError,
    NonDiagonalizable, EIGEN_TOL, JACOBI_TOL, PIVOT_TOL, SINGULAR_DET, STRUCTURAL_TOL,
};
use crate::linalg::inverse;

const MAX_JACOBI_SWEEPS: usize = 100;
const MAX_QR_ITERATIONS: usize = 100;

/// Eigenvalues in descending order with unit eigenvectors stored as the
/// matching columns of `eigenvectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseMatrix,
}

impl EigenDecomposition {
    /// `V · diag(λ) · Vᵀ`, the reconstruction of the source matrix.
    pub fn reconstruct(&self) -> DenseMatrix {
        let lambda = DenseMatrix::from_diagonal(&self.eigenvalues).expect("finite eigenvalues");
        let vl = mat_mul(&self.eigenvectors, &lambda).expect("square factors");
        mat_mul(&vl, &self.eigenvectors.transpose()).expect("square factors")
    }
}

/// `diagonal = P⁻¹ · A · P` for the transition matrix `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    pub transition: DenseMatrix,
    pub diagonal: DenseMatrix,
}

impl Diagonalization {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.diagonal.diagonal()
    }

    /// `P · D · P⁻¹`.
    pub fn reconstruct(&self) -> Result<DenseMatrix, LinalgError> {
        let p_inv = inverse(&self.transition)?;
        mat_mul(&mat_mul(&self.transition, &self.diagonal)?, &p_inv)
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
pub fn symmetric_eigen(a: &DenseMatrix) -> Result<EigenDecomposition, LinalgError> {
    let n = require_square("symmetric_eigen", a)?;
    let max_deviation = a.asymmetry();
    if max_deviation > STRUCTURAL_TOL {
        return Err(LinalgError::NotSymmetric { max_deviation });
    }
    let mut m = a.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let threshold = JACOBI_TOL * a.max_abs().max(1.0);
    let mut v = DenseMatrix::identity(n);

    let mut sweeps = 0;
    while m.max_off_diagonal() >= threshold {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(LinalgError::NoConvergence("jacobi sweep"));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                if m[(p, q)] != 0.0 {
                    jacobi_rotate(&mut m, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(y, y)].total_cmp(&m[(x, x)]));
    let eigenvalues = order.iter().map(|&k| m[(k, k)]).collect();
    let columns: Vec<DenseVector> = order.iter().map(|&k| canonical_sign(v.column(k))).collect();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: DenseMatrix::from_columns(&columns)?,
    })
}

/// Zeroes `m[p,q]` with the rotation `m ← Jᵀ m J` and accumulates `v ← v J`.
fn jacobi_rotate(m: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let n = m.rows();
    let apq = m[(p, q)];
    let tau = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    for k in 0..n {
        let (kp, kq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * kp - s * kq;
        m[(k, q)] = s * kp + c * kq;
    }
    for k in 0..n {
        let (pk, qk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * pk - s * qk;
        m[(q, k)] = s * pk + c * qk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        let (kp, kq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * kp - s * kq;
        v[(k, q)] = s * kp + c * kq;
    }
}

/// Normalises `v` and flips its sign so the largest-magnitude component
/// (the first one, on ties) is positive.
pub(crate) fn canonical_sign(v: DenseVector) -> DenseVector {
    let norm = v.norm();
    let v = if norm > 0.0 { v.scaled(1.0 / norm) } else { v };
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let lead = v
        .iter()
        .find(|x| x.abs() >= max - 1e-12)
        .copied()
        .unwrap_or(0.0);
    if lead < 0.0 {
        v.scaled(-1.0)
    } else {
        v
    }
}

/// Diagonalizes `a` over the reals.
///
/// Symmetric input goes through [`symmetric_eigen`] and yields an
/// orthogonal transition matrix. Otherwise the spectrum comes from
/// Hessenberg-QR iteration and each eigenspace from the null space of
/// `A - λI`.
pub fn diagonalize(a: &DenseMatrix) -> Result<Diagonalization, LinalgError> {
    let n = require_square("diagonalize", a)?;
    if a.is_symmetric(STRUCTURAL_TOL) {
        let eig = symmetric_eigen(a)?;
        let p = eig.eigenvectors;
        let diagonal = mat_mul(&p.transpose(), &mat_mul(a, &p)?)?;
        return Ok(Diagonalization {
            transition: p,
            diagonal,
        });
    }

    let spectrum = hessenberg_qr_eigenvalues(a)?;
    let scale = spectrum
        .iter()
        .fold(1.0f64, |m, &(re, im)| m.max(re.abs()).max(im.abs()));
    if spectrum.iter().any(|&(_, im)| im.abs() > EIGEN_TOL * scale) {
        return Err(LinalgError::NotDiagonalizable(
            NonDiagonalizable::ComplexSpectrum,
        ));
    }
    let mut values: Vec<f64> = spectrum.iter().map(|&(re, _)| re).collect();
    values.sort_by(|x, y| y.total_cmp(x));

    let mut columns = Vec::with_capacity(n);
    for cluster in cluster_eigenvalues(&values, EIGEN_TOL * scale) {
        let lambda = cluster.iter().sum::<f64>() / cluster.len() as f64;
        let basis = null_space(&a.sub_scaled_identity(lambda), PIVOT_TOL);
        if basis.len() < cluster.len() {
            return Err(LinalgError::NotDiagonalizable(NonDiagonalizable::Defective));
        }
        columns.extend(basis.into_iter().take(cluster.len()).map(canonical_sign));
    }
    let p = DenseMatrix::from_columns(&columns)?;
    if rank(&p) < n {
        return Err(LinalgError::NotDiagonalizable(NonDiagonalizable::Defective));
    }
    let p_inv = match inverse(&p) {
        Ok(inv) => inv,
        Err(LinalgError::Singular { det }) if det.abs() <= SINGULAR_DET => {
            return Err(LinalgError::NotDiagonalizable(NonDiagonalizable::Defective))
        }
        Err(e) => return Err(e),
    };
    let diagonal = mat_mul(&p_inv, &mat_mul(a, &p)?)?;
    Ok(Diagonalization {
        transition: p,
        diagonal,
    })
}

/// Groups a descending sequence into runs whose neighbours differ by at
/// most `tol`.
fn cluster_eigenvalues(sorted_desc: &[f64], tol: f64) -> Vec<Vec<f64>> {
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for &v in sorted_desc {
        match clusters.last_mut() {
            Some(c) if c.last().unwrap() - v <= tol => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    clusters
}

/// All eigenvalues of a real square matrix as `(re, im)` pairs.
///
/// Reduces to upper Hessenberg form by stabilised elimination, then runs
/// Francis double-shift QR with deflation.
pub(crate) fn hessenberg_qr_eigenvalues(a: &DenseMatrix) -> Result<Vec<(f64, f64)>, LinalgError> {
    let n = require_square("eigenvalues", a)?;
    // 1-based working copy; row and column 0 are unused.
    let mut h = vec![vec![0.0; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            h[i][j] = a[(i - 1, j - 1)];
        }
    }
    reduce_to_hessenberg(&mut h, n);
    for i in 3..=n {
        for j in 1..=(i - 2) {
            h[i][j] = 0.0;
        }
    }
    francis_qr(&mut h, n)
}

fn reduce_to_hessenberg(a: &mut [Vec<f64>], n: usize) {
    for m in 2..n {
        let mut x = 0.0f64;
        let mut piv = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                piv = j;
            }
        }
        if piv != m {
            for j in (m - 1)..=n {
                let t = a[piv][j];
                a[piv][j] = a[m][j];
                a[m][j] = t;
            }
            for row in a.iter_mut().skip(1) {
                row.swap(piv, m);
            }
        }
        if x != 0.0 {
            for i in (m + 1)..=n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..=n {
                        let v = a[m][j];
                        a[i][j] -= y * v;
                    }
                    for row in a.iter_mut().skip(1) {
                        let v = row[i];
                        row[m] += y * v;
                    }
                }
            }
        }
    }
}

fn with_sign(magnitude: f64, sign_of: f64) -> f64 {
    if sign_of >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

fn francis_qr(a: &mut [Vec<f64>], n: usize) -> Result<Vec<(f64, f64)>, LinalgError> {
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[i][j].abs();
        }
    }

    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            // Look for a single small subdiagonal element.
            let mut l = nn;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[nn][nn];
            if l == nn {
                // One root found.
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
            } else {
                y = a[nn - 1][nn - 1];
                w = a[nn][nn - 1] * a[nn - 1][nn];
                if l == nn - 1 {
                    // Two roots found.
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + with_sign(z, p);
                        wr[nn - 1] = x + z;
                        wr[nn] = x + z;
                        if z != 0.0 {
                            wr[nn] = x - w / z;
                        }
                        wi[nn - 1] = 0.0;
                        wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = x + p;
                        wr[nn] = x + p;
                        wi[nn - 1] = -z;
                        wi[nn] = z;
                    }
                    nn -= 2;
                } else {
                    if its == MAX_QR_ITERATIONS {
                        return Err(LinalgError::NoConvergence("hessenberg QR"));
                    }
                    if its > 0 && its % 10 == 0 {
                        // Exceptional shift.
                        t += x;
                        for i in 1..=nn {
                            a[i][i] -= x;
                        }
                        let s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    // Look for two consecutive small subdiagonal elements.
                    let mut m = nn - 2;
                    loop {
                        z = a[m][m];
                        r = x - z;
                        let s = y - z;
                        p = (r * s - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - r - s;
                        r = a[m + 2][m + 1];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nn {
                        a[i][i - 2] = 0.0;
                        if i != m + 2 {
                            a[i][i - 3] = 0.0;
                        }
                    }
                    // Double QR step on rows l..nn and columns m..nn.
                    for k in m..nn {
                        if k != m {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = if k != nn - 1 { a[k + 2][k - 1] } else { 0.0 };
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = with_sign((p * p + q * q + r * r).sqrt(), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[k][k - 1] = -a[k][k - 1];
                                }
                            } else {
                                a[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                p = a[k][j] + q * a[k + 1][j];
                                if k != nn - 1 {
                                    p += r * a[k + 2][j];
                                    a[k + 2][j] -= p * z;
                                }
                                a[k + 1][j] -= p * y;
                                a[k][j] -= p * x;
                            }
                            let mmin = nn.min(k + 3);
                            for row in a.iter_mut().take(mmin + 1).skip(l) {
                                p = x * row[k] + y * row[k + 1];
                                if k != nn - 1 {
                                    p += z * row[k + 2];
                                    row[k + 2] -= p * r;
                                }
                                row[k + 1] -= p * q;
                                row[k] -= p;
                            }
                        }
                    }
                }
            }
            if nn < 2 || l + 1 >= nn {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| (wr[i], wi[i])).collect())
}
