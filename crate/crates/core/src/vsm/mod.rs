//! The classical retrieval model: a term basis taken from the corpus,
//! frequency or tf-idf weights, cosine similarity and ranking. The
//! vocabulary is the basis and is never extended by later operations.

mod corpus;
pub mod index_file;
mod ranking;
mod similarity;
mod weighting;

pub use corpus::{ingest, ingest_with_vocabulary, Corpus, Vocabulary};
pub use ranking::{rank, RankedDoc, RankedList};
pub use similarity::{cosine_similarity, inner_product, norm};
pub use weighting::{
    embed_query, frequency_weights, out_of_vocabulary, tfidf_weights, Scheme, TermDocumentMatrix,
    Weighting,
};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VsmError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("line {line} has no tokens")]
    EmptyDocument { line: usize },
    #[error("line {line}: term {term:?} is not in the declared vocabulary")]
    UnknownTerm { line: usize, term: String },
    #[error("declared term {0:?} does not occur in any document")]
    UnusedTerm(String),
    #[error("query has no in-vocabulary terms")]
    EmptyQuery,
    #[error("{op}: dimension mismatch ({left} vs {right})")]
    Dimension {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("cosine similarity of a zero vector is undefined")]
    ZeroVector,
    #[error("document {doc_id} out of range (corpus has {n_docs} documents)")]
    UnknownDocument { doc_id: usize, n_docs: usize },
    #[error("index file, line {line}: {message}")]
    IndexFormat { line: usize, message: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
