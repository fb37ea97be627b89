use std::cmp::Ordering;

use super::{TermDocumentMatrix, VsmError};
use crate::linalg::DenseVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedDoc {
    pub doc_id: usize,
    /// Cosine similarity, or `-inf` when either side has zero norm.
    pub score: f64,
}

/// Documents by descending score; ties by ascending id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankedList {
    entries: Vec<RankedDoc>,
}

impl RankedList {
    pub fn entries(&self) -> &[RankedDoc] {
        &self.entries
    }

    pub fn top(&self, k: usize) -> &[RankedDoc] {
        &self.entries[..k.min(self.entries.len())]
    }

    pub fn doc_ids(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.doc_id).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn ranking_order(a: &RankedDoc, b: &RankedDoc) -> Ordering {
    b.score.total_cmp(&a.score).then(a.doc_id.cmp(&b.doc_id))
}

/// Scores every document column against `query` by cosine similarity.
/// Zero-norm columns (and every column, for a zero query) get `-inf` and
/// sort last.
pub fn rank(query: &DenseVector, tdm: &TermDocumentMatrix) -> Result<RankedList, VsmError> {
    let weights = tdm.weights();
    if query.dim() != weights.rows() {
        return Err(VsmError::Dimension {
            op: "rank",
            left: query.dim(),
            right: weights.rows(),
        });
    }
    let qn = query.norm();
    let mut entries: Vec<RankedDoc> = tdm
        .documents()
        .iter()
        .enumerate()
        .map(|(j, doc)| {
            let dn = doc.norm();
            let score = if qn == 0.0 || dn == 0.0 {
                f64::NEG_INFINITY
            } else {
                (query.dot(doc) / (qn * dn)).clamp(-1.0, 1.0)
            };
            RankedDoc {
                doc_id: j + 1,
                score,
            }
        })
        .collect();
    entries.sort_by(ranking_order);
    Ok(RankedList { entries })
}
