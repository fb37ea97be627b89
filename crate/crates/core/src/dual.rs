//! Linear functionals on the term space, the natural pairing, and the
//! dual representation `g ↦ (g⁻¹)ᵀ`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::groups::{inverse_element, make_permutation, GroupElement, GroupError, GroupKind};
use crate::linalg::text::parse_f64;
use crate::linalg::{mat_mul, DenseMatrix, DenseVector, LinalgError};
use crate::vsm::{TermDocumentMatrix, Vocabulary, VsmError, Weighting};

/// Absolute tolerance of the pairing invariance check.
pub const PAIRING_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualError {
    #[error("{op}: dimension mismatch ({left} vs {right})")]
    Dimension {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("basis mismatch: functional is expressed over {functional}, vector over {vector}")]
    BasisMismatch {
        functional: BasisTag,
        vector: BasisTag,
    },
    #[error("no cost given for term {0:?}")]
    MissingCost(String),
    #[error("cost file, line {line}: term {term:?} is not in the vocabulary")]
    UnknownTerm { line: usize, term: String },
    #[error("cost file, line {line}: duplicate cost for term {term:?}")]
    DuplicateTerm { line: usize, term: String },
    #[error("cost file, line {line}: {message}")]
    CostFormat { line: usize, message: String },
    #[error(transparent)]
    Vsm(#[from] VsmError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Identifies the ordered primal basis a functional's coefficients refer to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisTag(String);

impl BasisTag {
    pub fn standard() -> Self {
        BasisTag("standard".to_string())
    }

    pub fn named(name: impl Into<String>) -> Self {
        BasisTag(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `φ = Σ φᵢ v̂ᵢ` over the dual of the tagged basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFunctional {
    coefficients: DenseVector,
    basis: BasisTag,
}

impl LinearFunctional {
    /// A functional over the dual of the standard basis.
    pub fn new(coefficients: DenseVector) -> Self {
        Self::with_basis(coefficients, BasisTag::standard())
    }

    pub fn with_basis(coefficients: DenseVector, basis: BasisTag) -> Self {
        Self {
            coefficients,
            basis,
        }
    }

    /// The `i`-th dual basis functional `v̂ᵢ`.
    pub fn dual_basis(dim: usize, i: usize) -> Self {
        Self::new(DenseVector::basis(dim, i))
    }

    pub fn coefficients(&self) -> &DenseVector {
        &self.coefficients
    }

    pub fn basis(&self) -> &BasisTag {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.coefficients.dim()
    }
}

/// `⟨φ, v⟩ = Σ φᵢ vᵢ`, with `v` in the coordinates of `φ`'s basis.
pub fn pair(phi: &LinearFunctional, v: &DenseVector) -> Result<f64, DualError> {
    if phi.dim() != v.dim() {
        return Err(DualError::Dimension {
            op: "pair",
            left: phi.dim(),
            right: v.dim(),
        });
    }
    Ok(phi.coefficients.dot(v))
}

/// [`pair`] after checking that `v` is expressed in the functional's basis.
pub fn pair_tagged(
    phi: &LinearFunctional,
    v: &DenseVector,
    v_basis: &BasisTag,
) -> Result<f64, DualError> {
    if &phi.basis != v_basis {
        return Err(DualError::BasisMismatch {
            functional: phi.basis.clone(),
            vector: v_basis.clone(),
        });
    }
    pair(phi, v)
}

/// A group element together with its contragredient.
#[derive(Debug, Clone, PartialEq)]
pub struct DualRepresentation {
    primal: GroupElement,
    dual: GroupElement,
}

impl DualRepresentation {
    pub fn primal(&self) -> &GroupElement {
        &self.primal
    }

    pub fn dual(&self) -> &GroupElement {
        &self.dual
    }

    /// `max |dualᵀ · primal − I|`, zero in exact arithmetic.
    pub fn deviation(&self) -> f64 {
        let product = mat_mul(&self.dual.matrix().transpose(), self.primal.matrix())
            .expect("primal and dual have equal size");
        product.max_abs_diff(&DenseMatrix::identity(self.primal.dim()))
    }
}

/// Kind of `(g⁻¹)ᵀ` given the kind of `g`. Transposing an upper
/// triangular matrix makes it lower triangular, so borel maps to general.
fn dual_kind(kind: GroupKind) -> GroupKind {
    match kind {
        GroupKind::Borel => GroupKind::General,
        other => other,
    }
}

pub fn dual_representation(g: &GroupElement) -> DualRepresentation {
    let dual = match g.permutation() {
        // (P⁻¹)ᵀ = P for a permutation matrix.
        Some(perm) => make_permutation(perm).expect("valid permutation"),
        None => GroupElement::derived(dual_kind(g.kind()), inverse_element(g).matrix().transpose()),
    };
    DualRepresentation {
        primal: g.clone(),
        dual,
    }
}

/// `ρ̂(g)·φ`.
pub fn act_functional(
    dr: &DualRepresentation,
    phi: &LinearFunctional,
) -> Result<LinearFunctional, DualError> {
    if dr.dual.dim() != phi.dim() {
        return Err(DualError::Dimension {
            op: "act_functional",
            left: dr.dual.dim(),
            right: phi.dim(),
        });
    }
    let coefficients = dr.dual.matrix().mul_vec(&phi.coefficients)?;
    Ok(LinearFunctional::with_basis(
        coefficients,
        phi.basis.clone(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingReport {
    /// `⟨φ, v⟩`
    pub original: f64,
    /// `⟨ρ̂(g)φ, ρ(g)v⟩`
    pub transformed: f64,
    pub deviation: f64,
    pub passed: bool,
}

pub fn verify_pairing_invariance(
    g: &GroupElement,
    phi: &LinearFunctional,
    v: &DenseVector,
) -> Result<PairingReport, DualError> {
    if g.dim() != v.dim() {
        return Err(DualError::Dimension {
            op: "verify_pairing_invariance",
            left: g.dim(),
            right: v.dim(),
        });
    }
    let original = pair(phi, v)?;
    let moved_phi = act_functional(&dual_representation(g), phi)?;
    let moved_v = g.matrix().mul_vec(v)?;
    let transformed = pair(&moved_phi, &moved_v)?;
    let deviation = (transformed - original).abs();
    Ok(PairingReport {
        original,
        transformed,
        deviation,
        passed: deviation < PAIRING_TOL,
    })
}

/// Per-term costs read from a cost file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CostTable {
    costs: BTreeMap<String, f64>,
}

impl CostTable {
    pub fn get(&self, term: &str) -> Option<f64> {
        self.costs.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    /// The cost functional in vocabulary order.
    pub fn functional(&self, vocabulary: &Vocabulary) -> Result<LinearFunctional, DualError> {
        let coefficients = vocabulary
            .terms()
            .iter()
            .map(|t| self.get(t).ok_or_else(|| DualError::MissingCost(t.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearFunctional::new(DenseVector::new(coefficients)?))
    }
}

/// Parses `term cost` lines. Blank lines and lines starting with `#` are
/// skipped; terms outside `vocabulary` are rejected.
pub fn parse_costs(text: &str, vocabulary: &Vocabulary) -> Result<CostTable, DualError> {
    let mut costs = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let [term, value] = fields[..] else {
            return Err(DualError::CostFormat {
                line,
                message: format!("expected \"<term> <cost>\", got {trimmed:?}"),
            });
        };
        let value = parse_f64(value, line).map_err(|e| match e {
            LinalgError::Parse { line, message } => DualError::CostFormat { line, message },
            other => other.into(),
        })?;
        if vocabulary.position(term).is_none() {
            return Err(DualError::UnknownTerm {
                line,
                term: term.to_string(),
            });
        }
        if costs.insert(term.to_string(), value).is_some() {
            return Err(DualError::DuplicateTerm {
                line,
                term: term.to_string(),
            });
        }
    }
    Ok(CostTable { costs })
}

/// Which column a cost functional was paired against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostBasis {
    /// Raw term counts (untransformed frequency index).
    Counts,
    /// Stored weights (tf-idf or transformed index).
    Weights,
}

impl CostBasis {
    pub fn name(self) -> &'static str {
        match self {
            CostBasis::Counts => "counts",
            CostBasis::Weights => "weights",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub doc_id: usize,
    pub total: f64,
    pub paired_with: CostBasis,
}

pub fn total_cost(
    costs: &CostTable,
    tdm: &TermDocumentMatrix,
    doc_id: usize,
) -> Result<CostReport, DualError> {
    let phi = costs.functional(tdm.vocabulary())?;
    let column = tdm.document(doc_id)?;
    let scheme = tdm.scheme();
    let paired_with = if scheme.weighting == Weighting::Frequency && !scheme.transformed {
        CostBasis::Counts
    } else {
        CostBasis::Weights
    };
    Ok(CostReport {
        doc_id,
        total: pair(&phi, &column)?,
        paired_with,
    })
}
