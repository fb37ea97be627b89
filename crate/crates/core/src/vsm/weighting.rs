use std::fmt;
use std::str::FromStr;

use super::{Corpus, Vocabulary, VsmError};
use crate::linalg::{DenseMatrix, DenseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weighting {
    /// Raw term counts.
    Frequency,
    /// `tf · log10(N / df)`.
    TfIdf,
}

impl Weighting {
    pub fn name(self) -> &'static str {
        match self {
            Weighting::Frequency => "freq",
            Weighting::TfIdf => "tfidf",
        }
    }
}

impl FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "freq" | "frequency" => Ok(Weighting::Frequency),
            "tfidf" => Ok(Weighting::TfIdf),
            other => Err(format!(
                "unknown weighting {other:?} (expected tfidf or freq)"
            )),
        }
    }
}

/// Weighting scheme tag. `transformed` is set once a group element has
/// acted on the weights; `idf` is then kept for reference only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scheme {
    pub weighting: Weighting,
    pub transformed: bool,
}

impl Scheme {
    pub fn plain(weighting: Weighting) -> Self {
        Self {
            weighting,
            transformed: false,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.weighting.name())?;
        if self.transformed {
            f.write_str("+transformed")?;
        }
        Ok(())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, transformed) = match s.strip_suffix("+transformed") {
            Some(base) => (base, true),
            None => (s, false),
        };
        Ok(Scheme {
            weighting: base.parse()?,
            transformed,
        })
    }
}

/// Weighted `V × N` term-by-document matrix: row `i` is term `i`, column
/// `j` is document `j + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermDocumentMatrix {
    vocabulary: Vocabulary,
    weights: DenseMatrix,
    scheme: Scheme,
    df: Vec<usize>,
    idf: Vec<f64>,
}

impl TermDocumentMatrix {
    /// Assembles a matrix from stored parts, checking that the shapes agree.
    pub fn from_parts(
        vocabulary: Vocabulary,
        weights: DenseMatrix,
        scheme: Scheme,
        df: Vec<usize>,
        idf: Vec<f64>,
    ) -> Result<Self, VsmError> {
        let v = vocabulary.len();
        let check = |op, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(VsmError::Dimension {
                    op,
                    left: got,
                    right: want,
                })
            }
        };
        check("weights rows vs vocabulary", weights.rows(), v)?;
        check("df vs vocabulary", df.len(), v)?;
        match scheme.weighting {
            Weighting::TfIdf => check("idf vs vocabulary", idf.len(), v)?,
            Weighting::Frequency => check("idf for frequency scheme", idf.len(), 0)?,
        }
        Ok(Self {
            vocabulary,
            weights,
            scheme,
            df,
            idf,
        })
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn weights(&self) -> &DenseMatrix {
        &self.weights
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn df(&self) -> &[usize] {
        &self.df
    }

    /// Inverse document frequencies; empty for the frequency scheme.
    pub fn idf(&self) -> &[f64] {
        &self.idf
    }

    pub fn n_docs(&self) -> usize {
        self.weights.cols()
    }

    /// Weight column of document `doc_id` (1-based).
    pub fn document(&self, doc_id: usize) -> Result<DenseVector, VsmError> {
        if doc_id == 0 || doc_id > self.n_docs() {
            return Err(VsmError::UnknownDocument {
                doc_id,
                n_docs: self.n_docs(),
            });
        }
        Ok(self.weights.column(doc_id - 1))
    }

    pub fn documents(&self) -> Vec<DenseVector> {
        self.weights.columns()
    }

    /// Same vocabulary and statistics with new weights, tagged as transformed.
    pub(crate) fn with_transformed_weights(&self, weights: DenseMatrix) -> Self {
        debug_assert_eq!(weights.shape(), self.weights.shape());
        Self {
            vocabulary: self.vocabulary.clone(),
            weights,
            scheme: Scheme {
                weighting: self.scheme.weighting,
                transformed: true,
            },
            df: self.df.clone(),
            idf: self.idf.clone(),
        }
    }
}

fn count_matrix(corpus: &Corpus) -> DenseMatrix {
    let v = corpus.vocabulary().len();
    let n = corpus.n_docs();
    let mut w = DenseMatrix::zeros(v, n);
    for j in 0..n {
        for i in 0..v {
            w[(i, j)] = f64::from(corpus.tf(i, j));
        }
    }
    w
}

pub fn frequency_weights(corpus: &Corpus) -> TermDocumentMatrix {
    TermDocumentMatrix {
        vocabulary: corpus.vocabulary().clone(),
        weights: count_matrix(corpus),
        scheme: Scheme::plain(Weighting::Frequency),
        df: corpus.document_frequencies(),
        idf: Vec::new(),
    }
}

pub fn tfidf_weights(corpus: &Corpus) -> TermDocumentMatrix {
    let n = corpus.n_docs() as f64;
    let df = corpus.document_frequencies();
    let idf: Vec<f64> = df.iter().map(|&d| (n / d as f64).log10()).collect();
    let mut weights = count_matrix(corpus);
    for (i, &factor) in idf.iter().enumerate() {
        for j in 0..weights.cols() {
            weights[(i, j)] *= factor;
        }
    }
    TermDocumentMatrix {
        vocabulary: corpus.vocabulary().clone(),
        weights,
        scheme: Scheme::plain(Weighting::TfIdf),
        df,
        idf,
    }
}

/// Tokens of `text` that are not part of the vocabulary, in order.
pub fn out_of_vocabulary<'a>(text: &'a str, vocabulary: &Vocabulary) -> Vec<&'a str> {
    text.split_ascii_whitespace()
        .filter(|t| vocabulary.position(t).is_none())
        .collect()
}

/// Query vector in the term space of `tdm`: the query's own term counts,
/// multiplied by the corpus idf under tf-idf. Out-of-vocabulary tokens are
/// dropped.
pub fn embed_query(text: &str, tdm: &TermDocumentMatrix) -> Result<DenseVector, VsmError> {
    let mut tf = vec![0.0; tdm.vocabulary.len()];
    let mut hits = 0;
    for tok in text.split_ascii_whitespace() {
        if let Some(i) = tdm.vocabulary.position(tok) {
            tf[i] += 1.0;
            hits += 1;
        }
    }
    if hits == 0 {
        return Err(VsmError::EmptyQuery);
    }
    if tdm.scheme.weighting == Weighting::TfIdf {
        for (w, idf) in tf.iter_mut().zip(&tdm.idf) {
            *w *= idf;
        }
    }
    Ok(DenseVector::new(tf)?)
}
