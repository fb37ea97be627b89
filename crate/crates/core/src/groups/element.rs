use super::{GroupError, GroupKind, KIND_TOL};
use crate::linalg::{determinant, gauss_jordan, mat_mul, DenseMatrix, SINGULAR_DET};

/// An invertible `n × n` matrix, validated as a member of its tagged group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    kind: GroupKind,
    matrix: DenseMatrix,
    perm: Option<Vec<usize>>,
}

impl GroupElement {
    pub fn identity(n: usize, kind: GroupKind) -> Self {
        let perm = (kind == GroupKind::Permutation).then(|| (0..n).collect());
        Self {
            kind,
            matrix: DenseMatrix::identity(n),
            perm,
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `g(i)` for each basis index `i`; present only for permutations.
    pub fn permutation(&self) -> Option<&[usize]> {
        self.perm.as_deref()
    }

    pub fn determinant(&self) -> f64 {
        determinant(&self.matrix).expect("group elements are square")
    }

    /// Element whose membership follows algebraically from validated
    /// inputs, such as an inverse or a dual. Skips the checks of
    /// [`make_element`], in particular the absolute determinant threshold,
    /// which a product of valid elements can legitimately fall below.
    pub(crate) fn derived(kind: GroupKind, matrix: DenseMatrix) -> Self {
        debug_assert!(kind != GroupKind::Permutation);
        Self {
            kind,
            matrix,
            perm: None,
        }
    }

    /// Re-validates the matrix as a member of `kind`.
    pub fn reclassify(&self, kind: GroupKind) -> Result<GroupElement, GroupError> {
        make_element(self.matrix.clone(), kind)
    }
}

fn violation(
    kind: GroupKind,
    predicate: &'static str,
    worst: Option<(usize, usize, f64)>,
) -> Result<(), GroupError> {
    match worst {
        Some((row, col, value)) => Err(GroupError::Classification {
            kind,
            predicate,
            row,
            col,
            value,
        }),
        None => Ok(()),
    }
}

/// Entry with the largest `score` among those where `score > tol`.
fn worst_entry<F>(n: usize, tol: f64, score: F) -> Option<(usize, usize, f64)>
where
    F: Fn(usize, usize) -> Option<f64>,
{
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in 0..n {
            if let Some(v) = score(i, j) {
                if v.abs() > tol && worst.is_none_or(|w| v.abs() > w.2.abs()) {
                    worst = Some((i, j, v));
                }
            }
        }
    }
    worst
}

fn zero_diagonal(kind: GroupKind, m: &DenseMatrix) -> Result<(), GroupError> {
    match (0..m.rows()).find(|&i| m[(i, i)] == 0.0) {
        Some(i) => violation(kind, "nonzero diagonal", Some((i, i, 0.0))),
        None => Ok(()),
    }
}

/// Validates `matrix` as an element of the group `kind`.
pub fn make_element(matrix: DenseMatrix, kind: GroupKind) -> Result<GroupElement, GroupError> {
    if !matrix.is_square() {
        return Err(GroupError::Dimension {
            op: "make_element (rows vs cols)",
            left: matrix.rows(),
            right: matrix.cols(),
        });
    }
    let det = determinant(&matrix)?;
    if det.abs() <= SINGULAR_DET {
        return Err(GroupError::Singular { det });
    }
    let n = matrix.rows();
    let m = &matrix;
    match kind {
        GroupKind::General => {}
        GroupKind::Orthogonal => {
            let gram = mat_mul(&m.transpose(), m)?;
            let worst = worst_entry(n, KIND_TOL, |i, j| {
                Some(gram[(i, j)] - if i == j { 1.0 } else { 0.0 })
            });
            violation(kind, "MᵀM = I", worst)?;
        }
        GroupKind::Scaling => {
            let worst = worst_entry(n, KIND_TOL, |i, j| (i != j).then(|| m[(i, j)]));
            violation(kind, "zero off-diagonal", worst)?;
            zero_diagonal(kind, m)?;
        }
        GroupKind::Borel => {
            let worst = worst_entry(n, KIND_TOL, |i, j| (i > j).then(|| m[(i, j)]));
            violation(kind, "zero below diagonal", worst)?;
            zero_diagonal(kind, m)?;
        }
        GroupKind::Permutation => {
            let worst = worst_entry(n, KIND_TOL, |i, j| {
                let x = m[(i, j)];
                Some(if (x - 1.0).abs() <= KIND_TOL { 0.0 } else { x })
            });
            violation(kind, "0/1 entries", worst)?;
            let mut perm = vec![usize::MAX; n];
            for j in 0..n {
                let ones: Vec<usize> = (0..n).filter(|&i| m[(i, j)] > 0.5).collect();
                if ones.len() != 1 {
                    return Err(GroupError::Classification {
                        kind,
                        predicate: "exactly one 1 per column",
                        row: 0,
                        col: j,
                        value: ones.len() as f64,
                    });
                }
                perm[j] = ones[0];
            }
            return make_permutation(&perm);
        }
    }
    Ok(GroupElement {
        kind,
        matrix,
        perm: None,
    })
}

/// Permutation element acting by `g(Σ cᵢ bᵢ) = Σ cᵢ b_{g(i)}`: column `i`
/// of the matrix has its 1 in row `perm[i]`.
pub fn make_permutation(perm: &[usize]) -> Result<GroupElement, GroupError> {
    let n = perm.len();
    if n == 0 {
        return Err(GroupError::InvalidPermutation("empty".into()));
    }
    let mut seen = vec![false; n];
    for (i, &p) in perm.iter().enumerate() {
        if p >= n {
            return Err(GroupError::InvalidPermutation(format!(
                "g({i}) = {p} is out of range 0..{n}"
            )));
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(GroupError::InvalidPermutation(format!("{p} appears twice")));
        }
    }
    let mut matrix = DenseMatrix::zeros(n, n);
    for (i, &p) in perm.iter().enumerate() {
        matrix[(p, i)] = 1.0;
    }
    Ok(GroupElement {
        kind: GroupKind::Permutation,
        matrix,
        perm: Some(perm.to_vec()),
    })
}

/// `g ∘ h`, i.e. the matrix product `g·h`. The result keeps the kind when
/// both operands share it and is `general` otherwise.
pub fn compose(g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
    if g.dim() != h.dim() {
        return Err(GroupError::Dimension {
            op: "compose",
            left: g.dim(),
            right: h.dim(),
        });
    }
    if let (Some(gp), Some(hp)) = (&g.perm, &h.perm) {
        let composed: Vec<usize> = hp.iter().map(|&i| gp[i]).collect();
        return make_permutation(&composed);
    }
    let kind = if g.kind == h.kind {
        g.kind
    } else {
        GroupKind::General
    };
    Ok(GroupElement {
        kind,
        matrix: mat_mul(&g.matrix, &h.matrix)?,
        perm: None,
    })
}

/// Group inverse; the kind is preserved since every subgroup here is
/// closed under inversion.
pub fn inverse_element(g: &GroupElement) -> GroupElement {
    if let Some(p) = &g.perm {
        let mut inv = vec![0; p.len()];
        for (i, &gi) in p.iter().enumerate() {
            inv[gi] = i;
        }
        return make_permutation(&inv).expect("inverse of a permutation");
    }
    GroupElement::derived(
        g.kind,
        gauss_jordan(&g.matrix).expect("group elements are invertible"),
    )
}
