//! `GVSM-INDEX v1` text serialisation of a [`TermDocumentMatrix`].
//!
//! ```text
//! GVSM-INDEX v1
//! <scheme>
//! <V> <N>
//! <term_1> ... <term_V>
//! <df_1> <idf_1> <w_1,1> ... <w_1,N>
//! ...
//! ```
//!
//! Decimals carry nine significant digits. The frequency scheme has no
//! idf; its idf field is written as `-`.

use super::{Scheme, TermDocumentMatrix, Vocabulary, VsmError, Weighting};
use crate::linalg::text::{format_sig9, parse_f64};
use crate::linalg::{DenseMatrix, LinalgError};

pub const MAGIC: &str = "GVSM-INDEX v1";

pub fn write_index(tdm: &TermDocumentMatrix) -> String {
    let v = tdm.vocabulary().len();
    let n = tdm.n_docs();
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&tdm.scheme().to_string());
    out.push('\n');
    out.push_str(&format!("{v} {n}\n"));
    out.push_str(&tdm.vocabulary().terms().join(" "));
    out.push('\n');
    for i in 0..v {
        let mut fields = vec![tdm.df()[i].to_string()];
        fields.push(
            tdm.idf()
                .get(i)
                .map_or_else(|| "-".to_string(), |&x| format_sig9(x)),
        );
        fields.extend(tdm.weights().row(i).iter().map(|&w| format_sig9(w)));
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

fn format_err(line: usize, message: impl Into<String>) -> VsmError {
    VsmError::IndexFormat {
        line,
        message: message.into(),
    }
}

fn number(token: &str, line: usize) -> Result<f64, VsmError> {
    parse_f64(token, line).map_err(|e| match e {
        LinalgError::Parse { line, message } => format_err(line, message),
        other => other.into(),
    })
}

pub fn parse_index(text: &str) -> Result<TermDocumentMatrix, VsmError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| format_err(0, format!("unexpected end of file, expected {what}")))
    };

    let (lno, magic) = next("header")?;
    if magic.trim() != MAGIC {
        return Err(format_err(
            lno,
            format!("expected {MAGIC:?}, got {magic:?}"),
        ));
    }
    let (lno, scheme) = next("scheme")?;
    let scheme: Scheme = scheme
        .trim()
        .parse()
        .map_err(|e: String| format_err(lno, e))?;

    let (lno, dims) = next("\"<V> <N>\"")?;
    let dims: Vec<usize> = dims
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| format_err(lno, format!("invalid dimensions {dims:?}")))?;
    let (v, n) = match dims[..] {
        [v, n] if v > 0 && n > 0 => (v, n),
        _ => return Err(format_err(lno, "expected two positive dimensions")),
    };

    let (lno, terms) = next("term list")?;
    let vocabulary = Vocabulary::from_terms(terms.split_whitespace())
        .ok_or_else(|| format_err(lno, "duplicate term in vocabulary"))?;
    if vocabulary.len() != v {
        return Err(format_err(
            lno,
            format!("expected {v} terms, found {}", vocabulary.len()),
        ));
    }

    let mut df = Vec::with_capacity(v);
    let mut idf = Vec::with_capacity(v);
    let mut weights = Vec::with_capacity(v * n);
    for _ in 0..v {
        let (lno, row) = next("term row")?;
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != n + 2 {
            return Err(format_err(
                lno,
                format!("expected {} fields, found {}", n + 2, fields.len()),
            ));
        }
        let d: usize = fields[0]
            .parse()
            .ok()
            .filter(|&d| (1..=n).contains(&d))
            .ok_or_else(|| {
                format_err(lno, format!("invalid document frequency {:?}", fields[0]))
            })?;
        df.push(d);
        match (scheme.weighting, fields[1]) {
            (Weighting::Frequency, "-") => {}
            (Weighting::Frequency, other) => {
                return Err(format_err(
                    lno,
                    format!("frequency scheme has no idf, got {other:?}"),
                ))
            }
            (Weighting::TfIdf, tok) => idf.push(number(tok, lno)?),
        }
        for tok in &fields[2..] {
            weights.push(number(tok, lno)?);
        }
    }
    if let Some((lno, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(format_err(
            lno,
            "unexpected content after the last term row",
        ));
    }
    let weights = DenseMatrix::new(v, n, weights)?;
    TermDocumentMatrix::from_parts(vocabulary, weights, scheme, df, idf)
}
