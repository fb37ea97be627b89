//! Matrix groups acting on the term space: validated group elements,
//! their action on vectors and term-by-document matrices, and the
//! invariance checks that go with each subgroup.

mod action;
mod element;
mod flag;
mod scaling;
pub mod transform_file;

pub use action::{act_tdm, act_vector, preserves_cosine, CosineReport, COSINE_TOL};
pub use element::{compose, inverse_element, make_element, make_permutation, GroupElement};
pub use flag::{stabilizes_flag, StandardFlag, FLAG_TOL};
pub use scaling::{
    is_diagonalizable_scaling, scaling_profile, AxisClass, ScalingProfile, ScalingVerdict,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::LinalgError;

/// Tolerance for structural membership tests of the subgroups.
pub const KIND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `MᵀM = I`.
    Orthogonal,
    /// Invertible diagonal matrices.
    Scaling,
    /// Invertible upper triangular matrices.
    Borel,
    /// Permutations of the basis.
    Permutation,
    /// Any invertible matrix.
    General,
}

impl GroupKind {
    pub const ALL: [GroupKind; 5] = [
        GroupKind::Orthogonal,
        GroupKind::Scaling,
        GroupKind::Borel,
        GroupKind::Permutation,
        GroupKind::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Orthogonal => "orthogonal",
            GroupKind::Scaling => "scaling",
            GroupKind::Borel => "borel",
            GroupKind::Permutation => "permutation",
            GroupKind::General => "general",
        }
    }

    /// Whether elements of this kind preserve inner products, norms and
    /// cosine similarity.
    pub fn preserves_cosine(self) -> bool {
        matches!(self, GroupKind::Orthogonal | GroupKind::Permutation)
    }

    /// Whether elements of this kind are upper triangular, and therefore
    /// stabilize the standard flag.
    pub fn stabilizes_flag(self) -> bool {
        matches!(self, GroupKind::Borel | GroupKind::Scaling)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                format!("unknown group kind {s:?} (expected orthogonal, scaling, borel, permutation or general)")
            })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("singular matrix (|det| = {det:e}); group elements must be invertible")]
    Singular { det: f64 },
    #[error("not {kind}: {predicate} violated at ({row}, {col}) by {value:e}")]
    Classification {
        kind: GroupKind,
        predicate: &'static str,
        row: usize,
        col: usize,
        value: f64,
    },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{op}: dimension mismatch ({left} vs {right})")]
    Dimension {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("expected a {expected} element, got {found}")]
    WrongKind {
        expected: GroupKind,
        found: GroupKind,
    },
    #[error("vector {index} is zero")]
    ZeroVector { index: usize },
    #[error("need at least two vectors, got {0}")]
    TooFewVectors(usize),
    #[error("transform file, line {line}: {message}")]
    TransformFormat { line: usize, message: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
