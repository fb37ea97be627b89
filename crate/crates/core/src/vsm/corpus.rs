use std::collections::HashMap;

use super::VsmError;

/// Ordered set of distinct terms. Position `i` is basis vector `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Builds a vocabulary from distinct terms, keeping their order.
    /// Returns `None` if a term repeats or is empty.
    pub fn from_terms<I, S>(terms: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vocab = Vocabulary::default();
        for t in terms {
            let t = t.into();
            if t.is_empty() || vocab.index.contains_key(&t) {
                return None;
            }
            vocab.insert(t);
        }
        Some(vocab)
    }

    fn insert(&mut self, term: String) -> usize {
        if let Some(&i) = self.index.get(&term) {
            return i;
        }
        let i = self.terms.len();
        self.index.insert(term.clone(), i);
        self.terms.push(term);
        i
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn position(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, i: usize) -> &str {
        &self.terms[i]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }
}

/// Bag-of-words corpus: one term-count vector per document. Document ids
/// are 1-based positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    vocabulary: Vocabulary,
    counts: Vec<Vec<u32>>,
}

impl Corpus {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn n_docs(&self) -> usize {
        self.counts.len()
    }

    /// Term counts of document `doc_id` (1-based).
    pub fn counts(&self, doc_id: usize) -> Result<&[u32], VsmError> {
        doc_id
            .checked_sub(1)
            .and_then(|i| self.counts.get(i))
            .map(Vec::as_slice)
            .ok_or(VsmError::UnknownDocument {
                doc_id,
                n_docs: self.n_docs(),
            })
    }

    pub fn tf(&self, term: usize, doc_index: usize) -> u32 {
        self.counts[doc_index][term]
    }

    /// Number of documents containing each term.
    pub fn document_frequencies(&self) -> Vec<usize> {
        (0..self.vocabulary.len())
            .map(|t| self.counts.iter().filter(|c| c[t] > 0).count())
            .collect()
    }

    pub fn from_text(text: &str) -> Result<Self, VsmError> {
        ingest(text.lines())
    }
}

/// One document per line, tokens split on ASCII whitespace. The
/// vocabulary follows first occurrence across documents in order.
pub fn ingest<I, S>(lines: I) -> Result<Corpus, VsmError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut vocabulary = Vocabulary::default();
    let mut counts: Vec<Vec<u32>> = Vec::new();
    for (i, line) in lines.into_iter().enumerate() {
        let mut doc = vec![0u32; vocabulary.len()];
        let mut tokens = 0;
        for tok in line.as_ref().split_ascii_whitespace() {
            let t = vocabulary.insert(tok.to_string());
            if t >= doc.len() {
                doc.resize(t + 1, 0);
            }
            doc[t] += 1;
            tokens += 1;
        }
        if tokens == 0 {
            return Err(VsmError::EmptyDocument { line: i + 1 });
        }
        counts.push(doc);
    }
    if counts.is_empty() {
        return Err(VsmError::EmptyCorpus);
    }
    Ok(finish(vocabulary, counts))
}

/// Like [`ingest`], but over a declared term universe whose order fixes
/// the basis. Every token must belong to it and every declared term must
/// occur in at least one document.
pub fn ingest_with_vocabulary<I, S>(lines: I, vocabulary: &Vocabulary) -> Result<Corpus, VsmError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let v = vocabulary.len();
    let mut counts: Vec<Vec<u32>> = Vec::new();
    for (i, line) in lines.into_iter().enumerate() {
        let mut doc = vec![0u32; v];
        let mut tokens = 0;
        for tok in line.as_ref().split_ascii_whitespace() {
            let t = vocabulary
                .position(tok)
                .ok_or_else(|| VsmError::UnknownTerm {
                    line: i + 1,
                    term: tok.to_string(),
                })?;
            doc[t] += 1;
            tokens += 1;
        }
        if tokens == 0 {
            return Err(VsmError::EmptyDocument { line: i + 1 });
        }
        counts.push(doc);
    }
    if counts.is_empty() {
        return Err(VsmError::EmptyCorpus);
    }
    if let Some(t) = (0..v).find(|&t| counts.iter().all(|c| c[t] == 0)) {
        return Err(VsmError::UnusedTerm(vocabulary.term(t).to_string()));
    }
    Ok(finish(vocabulary.clone(), counts))
}

fn finish(vocabulary: Vocabulary, mut counts: Vec<Vec<u32>>) -> Corpus {
    let v = vocabulary.len();
    for doc in &mut counts {
        doc.resize(v, 0);
    }
    Corpus { vocabulary, counts }
}
