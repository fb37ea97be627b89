use super::{GroupElement, GroupError};
use crate::linalg::{mat_mul, DenseVector};
use crate::vsm::{cosine_similarity, TermDocumentMatrix};

/// Pass threshold for cosine preservation.
pub const COSINE_TOL: f64 = 1e-9;

/// `M · v` for the element's matrix `M`.
pub fn act_vector(g: &GroupElement, v: &DenseVector) -> Result<DenseVector, GroupError> {
    if g.dim() != v.dim() {
        return Err(GroupError::Dimension {
            op: "act_vector",
            left: g.dim(),
            right: v.dim(),
        });
    }
    Ok(g.matrix().mul_vec(v)?)
}

/// Transforms every document column. Vocabulary and document frequencies
/// are unchanged; the scheme is tagged as transformed.
pub fn act_tdm(
    g: &GroupElement,
    tdm: &TermDocumentMatrix,
) -> Result<TermDocumentMatrix, GroupError> {
    let vocab = tdm.vocabulary().len();
    if g.dim() != vocab {
        return Err(GroupError::Dimension {
            op: "act_tdm (element vs vocabulary size)",
            left: g.dim(),
            right: vocab,
        });
    }
    let weights = mat_mul(g.matrix(), tdm.weights())?;
    Ok(tdm.with_transformed_weights(weights))
}

/// Pairwise comparison of similarities and norms before and after `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineReport {
    pub pairs: usize,
    /// `max |sim(gu, gv) - sim(u, v)|` over all pairs.
    pub max_cosine_deviation: f64,
    /// `max |‖gv‖ - ‖v‖|` over all vectors.
    pub max_norm_deviation: f64,
    /// Cosine deviation below [`COSINE_TOL`].
    pub passed: bool,
}

pub fn preserves_cosine(
    g: &GroupElement,
    vectors: &[DenseVector],
) -> Result<CosineReport, GroupError> {
    if vectors.len() < 2 {
        return Err(GroupError::TooFewVectors(vectors.len()));
    }
    if let Some(index) = vectors.iter().position(|v| v.norm() == 0.0) {
        return Err(GroupError::ZeroVector { index });
    }
    let moved: Vec<DenseVector> = vectors
        .iter()
        .map(|v| act_vector(g, v))
        .collect::<Result<_, _>>()?;
    if let Some(index) = moved.iter().position(|v| v.norm() == 0.0) {
        return Err(GroupError::ZeroVector { index });
    }

    let max_norm_deviation = vectors
        .iter()
        .zip(&moved)
        .map(|(v, gv)| (gv.norm() - v.norm()).abs())
        .fold(0.0, f64::max);
    let mut pairs = 0;
    let mut max_cosine_deviation = 0.0f64;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            let before = cosine_similarity(&vectors[i], &vectors[j]).expect("nonzero, same dim");
            let after = cosine_similarity(&moved[i], &moved[j]).expect("nonzero, same dim");
            max_cosine_deviation = max_cosine_deviation.max((after - before).abs());
            pairs += 1;
        }
    }
    Ok(CosineReport {
        pairs,
        max_cosine_deviation,
        max_norm_deviation,
        passed: max_cosine_deviation < COSINE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_element, make_permutation, GroupKind};
    use crate::linalg::DenseMatrix;

    fn v(xs: &[f64]) -> DenseVector {
        DenseVector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn scaling_first_document() {
        let s = make_element(
            DenseMatrix::from_diagonal(&[2.0, 3.0, 2.0, 1.0, 1.0, 1.0]).unwrap(),
            GroupKind::Scaling,
        )
        .unwrap();
        let moved = act_vector(&s, &v(&[0.352, 0.0, 0.0, 0.0, 0.954, 0.0])).unwrap();
        assert_eq!(moved.as_slice(), &[0.704, 0.0, 0.0, 0.0, 0.954, 0.0]);
    }

    #[test]
    fn identity_leaves_vectors_alone() {
        let id = GroupElement::identity(3, GroupKind::General);
        let x = v(&[1.5, -2.0, 0.25]);
        assert_eq!(act_vector(&id, &x).unwrap(), x);
        let report = preserves_cosine(&id, &[x.clone(), v(&[1.0, 1.0, 1.0])]).unwrap();
        assert_eq!(report.max_cosine_deviation, 0.0);
        assert!(report.passed);
    }

    #[test]
    fn input_validation() {
        let p = make_permutation(&[1, 0]).unwrap();
        assert!(matches!(
            act_vector(&p, &v(&[1.0, 2.0, 3.0])),
            Err(GroupError::Dimension { .. })
        ));
        assert_eq!(
            preserves_cosine(&p, &[v(&[1.0, 0.0])]),
            Err(GroupError::TooFewVectors(1))
        );
        assert_eq!(
            preserves_cosine(&p, &[v(&[1.0, 0.0]), DenseVector::zeros(2)]),
            Err(GroupError::ZeroVector { index: 1 })
        );
    }
}
