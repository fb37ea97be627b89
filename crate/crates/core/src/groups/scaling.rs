use super::{GroupElement, GroupError, GroupKind};
use crate::linalg::{
    determinant, diagonalize, DenseMatrix, Diagonalization, LinalgError, NonDiagonalizable,
    SINGULAR_DET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisClass {
    /// `s > 1`
    Dilation,
    /// `0 < s < 1`
    Contraction,
    /// `s = -1`
    Reflection,
    /// `s = 1`
    Identity,
    /// `s < 0`, `s ≠ -1`
    OtherNegative,
    /// Zero or NaN; never produced by a valid element.
    Other,
}

impl AxisClass {
    pub fn of(s: f64) -> AxisClass {
        if s == 1.0 {
            AxisClass::Identity
        } else if s == -1.0 {
            AxisClass::Reflection
        } else if s > 1.0 {
            AxisClass::Dilation
        } else if s > 0.0 {
            AxisClass::Contraction
        } else if s < 0.0 {
            AxisClass::OtherNegative
        } else {
            AxisClass::Other
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxisClass::Dilation => "dilation",
            AxisClass::Contraction => "contraction",
            AxisClass::Reflection => "reflection",
            AxisClass::Identity => "identity",
            AxisClass::OtherNegative => "other-negative",
            AxisClass::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingProfile {
    pub factors: Vec<f64>,
    pub classes: Vec<AxisClass>,
}

pub fn scaling_profile(g: &GroupElement) -> Result<ScalingProfile, GroupError> {
    if g.kind() != GroupKind::Scaling {
        return Err(GroupError::WrongKind {
            expected: GroupKind::Scaling,
            found: g.kind(),
        });
    }
    let factors = g.matrix().diagonal();
    let classes = factors.iter().map(|&s| AxisClass::of(s)).collect();
    Ok(ScalingProfile { factors, classes })
}

/// Whether an invertible matrix is a scaling operator in some basis.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalingVerdict {
    Diagonalizable(Diagonalization),
    NotDiagonalizable(NonDiagonalizable),
}

impl ScalingVerdict {
    pub fn is_diagonalizable(&self) -> bool {
        matches!(self, ScalingVerdict::Diagonalizable(_))
    }

    pub fn diagonalization(&self) -> Option<&Diagonalization> {
        match self {
            ScalingVerdict::Diagonalizable(d) => Some(d),
            ScalingVerdict::NotDiagonalizable(_) => None,
        }
    }
}

/// An invertible matrix represents a diagonalizable scaling operator iff
/// it has `n` independent real eigenvectors. Symmetric matrices always do.
pub fn is_diagonalizable_scaling(matrix: &DenseMatrix) -> Result<ScalingVerdict, GroupError> {
    let det = determinant(matrix)?;
    if det.abs() <= SINGULAR_DET {
        return Err(GroupError::Singular { det });
    }
    match diagonalize(matrix) {
        Ok(d) => Ok(ScalingVerdict::Diagonalizable(d)),
        Err(LinalgError::NotDiagonalizable(why)) => Ok(ScalingVerdict::NotDiagonalizable(why)),
        Err(e) => Err(e.into()),
    }
}
