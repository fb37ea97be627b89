use super::GroupElement;
use crate::linalg::DenseVector;

/// Coordinates smaller than this count as zero in flag membership tests.
pub const FLAG_TOL: f64 = 1e-12;

/// The chain `{0} ⊂ V₁ ⊂ … ⊂ Vₙ` with `Vᵢ = span(e₁, …, eᵢ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardFlag {
    pub dim: usize,
}

impl StandardFlag {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    /// Whether `v` lies in `V_level`: coordinates `level + 1 ..= n` vanish.
    pub fn contains(&self, level: usize, v: &DenseVector) -> bool {
        debug_assert_eq!(v.dim(), self.dim);
        v.as_slice()[level.min(self.dim)..]
            .iter()
            .all(|x| x.abs() <= FLAG_TOL)
    }
}

/// True iff `g·eᵢ ∈ Vᵢ` for every `i`, which for an invertible `g` means
/// `gVᵢ = Vᵢ` along the whole flag.
pub fn stabilizes_flag(g: &GroupElement) -> bool {
    let flag = StandardFlag::new(g.dim());
    (1..=g.dim()).all(|level| flag.contains(level, &g.matrix().column(level - 1)))
}
