use super::VsmError;
use crate::linalg::DenseVector;

fn same_dim(op: &'static str, u: &DenseVector, v: &DenseVector) -> Result<(), VsmError> {
    if u.dim() == v.dim() {
        Ok(())
    } else {
        Err(VsmError::Dimension {
            op,
            left: u.dim(),
            right: v.dim(),
        })
    }
}

/// Euclidean inner product `Σ u_k v_k`.
pub fn inner_product(u: &DenseVector, v: &DenseVector) -> Result<f64, VsmError> {
    same_dim("inner_product", u, v)?;
    Ok(u.dot(v))
}

pub fn norm(v: &DenseVector) -> f64 {
    v.norm()
}

/// `u·v / (‖u‖‖v‖)`. Can be negative once reflections have acted on the
/// vectors.
pub fn cosine_similarity(u: &DenseVector, v: &DenseVector) -> Result<f64, VsmError> {
    same_dim("cosine_similarity", u, v)?;
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(VsmError::ZeroVector);
    }
    Ok((u.dot(v) / (nu * nv)).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vec_of(xs: &[f64]) -> DenseVector {
        DenseVector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn basis_vectors_are_orthogonal() {
        let e0 = DenseVector::basis(3, 0);
        let e2 = DenseVector::basis(3, 2);
        assert_eq!(inner_product(&e0, &e2).unwrap(), 0.0);
        assert_eq!(cosine_similarity(&e0, &e2).unwrap(), 0.0);
    }

    #[test]
    fn zero_and_mismatch_errors() {
        let z = DenseVector::zeros(2);
        let v = vec_of(&[1.0, 2.0]);
        assert_eq!(norm(&z), 0.0);
        assert_eq!(cosine_similarity(&z, &v), Err(VsmError::ZeroVector));
        assert!(matches!(
            inner_product(&v, &vec_of(&[1.0])),
            Err(VsmError::Dimension {
                left: 2,
                right: 1,
                ..
            })
        ));
    }

    #[test]
    fn self_similarity_is_one() {
        let v = vec_of(&[0.3, -2.0, 5.5]);
        assert!((cosine_similarity(&v, &v).unwrap() - 1.0).abs() < 1e-15);
    }

    fn small_vec() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, 4)
    }

    proptest! {
        #[test]
        fn inner_product_is_bilinear(u in small_vec(), w in small_vec(), v in small_vec(), k in -5.0f64..5.0) {
            let (u, w, v) = (vec_of(&u), vec_of(&w), vec_of(&v));
            let ku_w: Vec<f64> = u.iter().zip(w.iter()).map(|(a, b)| k * a + b).collect();
            let lhs = inner_product(&vec_of(&ku_w), &v).unwrap();
            let rhs = k * inner_product(&u, &v).unwrap() + inner_product(&w, &v).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);
        }

        #[test]
        fn norm_scales_absolutely(v in small_vec(), k in -5.0f64..5.0) {
            let v = vec_of(&v);
            prop_assert!((norm(&v.scaled(k)) - k.abs() * norm(&v)).abs() < 1e-9);
        }

        #[test]
        fn cosine_is_symmetric_and_scale_invariant(
            u in small_vec(), v in small_vec(), a in 0.01f64..100.0, b in 0.01f64..100.0,
        ) {
            let (u, v) = (vec_of(&u), vec_of(&v));
            prop_assume!(u.norm() > 1e-3 && v.norm() > 1e-3);
            let s = cosine_similarity(&u, &v).unwrap();
            prop_assert!((s - cosine_similarity(&v, &u).unwrap()).abs() < 1e-12);
            prop_assert!((s - cosine_similarity(&u.scaled(a), &v.scaled(b)).unwrap()).abs() < 1e-9);
            prop_assert!((-1.0..=1.0).contains(&s));
        }
    }
}
