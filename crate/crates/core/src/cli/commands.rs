use std::fs;
use std::path::{Path, PathBuf};

use log::warn;
use thiserror::Error;

use super::report::{InputDigest, Outcome, RunReport};
use crate::dual::{
    dual_representation, parse_costs, total_cost, verify_pairing_invariance, DualError,
    LinearFunctional,
};
use crate::groups::transform_file::parse_transform;
use crate::groups::{act_tdm, preserves_cosine, stabilizes_flag, GroupElement, GroupError};
use crate::linalg::text::format_sig9;
use crate::linalg::DenseVector;
use crate::vsm::index_file::{parse_index, write_index};
use crate::vsm::{
    embed_query, frequency_weights, ingest, ingest_with_vocabulary, out_of_vocabulary, rank,
    tfidf_weights, Corpus, TermDocumentMatrix, Vocabulary, VsmError, Weighting,
};

/// Failures that end a command with exit status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Vsm(#[from] VsmError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Dual(#[from] DualError),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file<T, E>(path: &Path, r: Result<T, E>) -> Result<T, CliError>
where
    E: std::error::Error + Send + Sync + 'static,
{
    r.map_err(|e| CliError::Input {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

fn load_index(path: &Path, digest: &mut InputDigest) -> Result<TermDocumentMatrix, CliError> {
    let text = read(path)?;
    digest.add("index", text.as_bytes());
    in_file(path, parse_index(&text))
}

fn load_transform(path: &Path, digest: &mut InputDigest) -> Result<GroupElement, CliError> {
    let text = read(path)?;
    digest.add("matrix", text.as_bytes());
    in_file(path, parse_transform(&text))
}

fn check_dims(g: &GroupElement, tdm: &TermDocumentMatrix) -> Result<(), CliError> {
    let v = tdm.vocabulary().len();
    if g.dim() != v {
        return Err(CliError::Usage(format!(
            "transform is {n}x{n} but the index vocabulary has {v} terms",
            n = g.dim()
        )));
    }
    Ok(())
}

pub fn cmd_index(
    corpus_path: &Path,
    weighting: Weighting,
    vocab_path: Option<&Path>,
    out_path: &Path,
) -> Result<RunReport, CliError> {
    let mut digest = InputDigest::new();
    let text = read(corpus_path)?;
    digest.add("corpus", text.as_bytes());
    digest.add("weighting", weighting.name().as_bytes());
    let corpus: Corpus = match vocab_path {
        None => in_file(corpus_path, ingest(text.lines()))?,
        Some(vp) => {
            let vtext = read(vp)?;
            digest.add("vocab", vtext.as_bytes());
            let vocab = Vocabulary::from_terms(vtext.split_whitespace())
                .filter(|v| !v.is_empty())
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "{}: empty vocabulary or duplicate term",
                        vp.display()
                    ))
                })?;
            in_file(corpus_path, ingest_with_vocabulary(text.lines(), &vocab))?
        }
    };
    let tdm = match weighting {
        Weighting::Frequency => frequency_weights(&corpus),
        Weighting::TfIdf => tfidf_weights(&corpus),
    };
    write(out_path, &write_index(&tdm))?;

    let mut r = RunReport::new("index", &digest);
    r.say(format!(
        "indexed {} documents over {} terms ({}) into {}",
        tdm.n_docs(),
        tdm.vocabulary().len(),
        tdm.scheme(),
        out_path.display()
    ));
    r.put("scheme", tdm.scheme().to_string());
    r.put("V", tdm.vocabulary().len().to_string());
    r.put("N", tdm.n_docs().to_string());
    for (i, term) in tdm.vocabulary().terms().iter().enumerate() {
        let df = tdm.df()[i];
        match tdm.idf().get(i) {
            Some(&idf) => r.say(format!("  {term}: df={df} idf={}", format_sig9(idf))),
            None => r.say(format!("  {term}: df={df}")),
        }
        r.put(format!("df_{term}"), df.to_string());
        if let Some(&idf) = tdm.idf().get(i) {
            r.put_num(format!("idf_{term}"), idf);
        }
    }
    Ok(r)
}

pub fn cmd_query(
    index_path: &Path,
    text: &str,
    top_k: usize,
    matrix_path: Option<&Path>,
) -> Result<RunReport, CliError> {
    if top_k == 0 {
        return Err(CliError::Usage("--top must be at least 1".into()));
    }
    let mut digest = InputDigest::new();
    let tdm = load_index(index_path, &mut digest)?;
    digest.add("query", text.as_bytes());
    digest.add("top", top_k.to_string().as_bytes());

    for tok in out_of_vocabulary(text, tdm.vocabulary()) {
        warn!("query term {tok:?} is not in the index vocabulary; ignored");
    }
    let mut query = embed_query(text, &tdm)?;
    let transform = match matrix_path {
        Some(mp) => {
            let g = load_transform(mp, &mut digest)?;
            check_dims(&g, &tdm)?;
            query = g.matrix().mul_vec(&query).expect("dimensions checked");
            Some(g)
        }
        None => None,
    };
    let ranked = rank(&query, &tdm)?;
    let hits = ranked.top(top_k);

    let mut r = RunReport::new("query", &digest);
    if let Some(g) = &transform {
        r.say(format!(
            "query transformed by the {} element before ranking",
            g.kind()
        ));
    }
    r.say(format!("top {} of {} documents:", hits.len(), ranked.len()));
    r.put("n_results", hits.len().to_string());
    for (i, hit) in hits.iter().enumerate() {
        let score = format_sig9(hit.score);
        r.say(format!("  {}. doc {} score {}", i + 1, hit.doc_id, score));
        r.put(
            format!("rank_{}", i + 1),
            format!("{}:{}", hit.doc_id, score),
        );
    }
    Ok(r)
}

pub fn cmd_transform(
    index_path: &Path,
    matrix_path: &Path,
    out_path: &Path,
) -> Result<RunReport, CliError> {
    let mut digest = InputDigest::new();
    let tdm = load_index(index_path, &mut digest)?;
    let g = load_transform(matrix_path, &mut digest)?;
    check_dims(&g, &tdm)?;
    let moved = act_tdm(&g, &tdm)?;
    write(out_path, &write_index(&moved))?;

    let guaranteed = g.kind().preserves_cosine();
    let mut r = RunReport::new("transform", &digest);
    r.say(format!(
        "applied a {} element (det {}) to {} documents; wrote {}",
        g.kind(),
        format_sig9(g.determinant()),
        moved.n_docs(),
        out_path.display()
    ));
    r.say(if guaranteed {
        "cosine similarities are preserved by this kind".to_string()
    } else {
        format!(
            "cosine similarities are not guaranteed to be preserved by a {} element",
            g.kind()
        )
    });
    r.put("kind", g.kind().name());
    r.put_num("det", g.determinant());
    r.put("cosine_guaranteed", guaranteed.to_string());
    r.put("scheme", moved.scheme().to_string());
    Ok(r)
}

struct Check {
    name: &'static str,
    guaranteed: bool,
    /// `None` when the check could not run on this input.
    measured: Option<(f64, bool)>,
    note: Option<String>,
}

fn max_below_diagonal(g: &GroupElement) -> f64 {
    let m = g.matrix();
    let mut worst = 0.0f64;
    for i in 0..m.rows() {
        for j in 0..i {
            worst = worst.max(m[(i, j)].abs());
        }
    }
    worst
}

pub fn cmd_verify(index_path: &Path, matrix_path: &Path) -> Result<RunReport, CliError> {
    let mut digest = InputDigest::new();
    let tdm = load_index(index_path, &mut digest)?;
    let g = load_transform(matrix_path, &mut digest)?;
    check_dims(&g, &tdm)?;
    let kind = g.kind();

    let docs: Vec<DenseVector> = tdm
        .documents()
        .into_iter()
        .filter(|d| d.norm() > 0.0)
        .collect();
    let (cosine, norm) = match preserves_cosine(&g, &docs) {
        Ok(rep) => (
            Check {
                name: "cosine",
                guaranteed: kind.preserves_cosine(),
                measured: Some((rep.max_cosine_deviation, rep.passed)),
                note: None,
            },
            Check {
                name: "norm",
                guaranteed: kind.preserves_cosine(),
                measured: Some((
                    rep.max_norm_deviation,
                    rep.max_norm_deviation < crate::groups::COSINE_TOL,
                )),
                note: None,
            },
        ),
        Err(e) => {
            let skipped = |name| Check {
                name,
                guaranteed: kind.preserves_cosine(),
                measured: None,
                note: Some(e.to_string()),
            };
            (skipped("cosine"), skipped("norm"))
        }
    };
    let flag = Check {
        name: "flag",
        guaranteed: kind.stabilizes_flag(),
        measured: Some((max_below_diagonal(&g), stabilizes_flag(&g))),
        note: None,
    };

    let dr = dual_representation(&g);
    let mut pairing_dev = 0.0f64;
    let mut pairing_ok = true;
    for doc in tdm.documents() {
        for i in 0..g.dim() {
            let phi = LinearFunctional::dual_basis(g.dim(), i);
            let rep = verify_pairing_invariance(&g, &phi, &doc)?;
            pairing_dev = pairing_dev.max(rep.deviation);
            pairing_ok &= rep.passed;
        }
    }
    let pairing = Check {
        name: "pairing",
        guaranteed: true,
        measured: Some((pairing_dev, pairing_ok)),
        note: None,
    };

    let mut r = RunReport::new("verify", &digest);
    r.say(format!(
        "{kind} element, det {}",
        format_sig9(g.determinant())
    ));
    r.put("kind", kind.name());
    r.put_num("det", g.determinant());
    r.put_num("dual_deviation", dr.deviation());
    let mut failed = false;
    for c in [cosine, norm, flag, pairing] {
        let status = match (c.measured, c.guaranteed) {
            (None, _) => "skipped",
            (Some(_), false) => "not-guaranteed",
            (Some((_, true)), true) => "pass",
            (Some((_, false)), true) => "fail",
        };
        match c.measured {
            Some((dev, held)) => r.say(format!(
                "  {}: {}, max deviation {}{}",
                c.name,
                status.to_uppercase().replace('-', " "),
                format_sig9(dev),
                if c.guaranteed {
                    ""
                } else if held {
                    " (holds here)"
                } else {
                    " (does not hold here)"
                }
            )),
            None => r.say(format!(
                "  {}: SKIPPED: {}",
                c.name,
                c.note.as_deref().unwrap_or("not applicable")
            )),
        }
        r.put(format!("{}_status", c.name), status);
        if let Some((dev, held)) = c.measured {
            r.put(format!("{}_holds", c.name), held.to_string());
            r.put_num(format!("{}_max_deviation", c.name), dev);
        }
        failed |= status == "fail";
    }
    r.put("overall", if failed { "fail" } else { "pass" });
    if failed {
        r.outcome = Outcome::InvariantFailure;
    }
    Ok(r)
}

pub fn cmd_cost(
    index_path: &Path,
    cost_path: &Path,
    doc_id: Option<usize>,
) -> Result<RunReport, CliError> {
    let mut digest = InputDigest::new();
    let tdm = load_index(index_path, &mut digest)?;
    let text = read(cost_path)?;
    digest.add("costs", text.as_bytes());
    if let Some(d) = doc_id {
        digest.add("doc", d.to_string().as_bytes());
    }
    let costs = in_file(cost_path, parse_costs(&text, tdm.vocabulary()))?;
    let ids: Vec<usize> = match doc_id {
        Some(d) => vec![d],
        None => (1..=tdm.n_docs()).collect(),
    };

    let mut r = RunReport::new("cost", &digest);
    for id in ids {
        let rep = total_cost(&costs, &tdm, id)?;
        if r.get("paired_with").is_none() {
            r.say(format!(
                "pairing costs with document {}",
                rep.paired_with.name()
            ));
            r.put("paired_with", rep.paired_with.name());
        }
        r.say(format!("  doc {id}: total cost {}", format_sig9(rep.total)));
        r.put_num(format!("cost_{id}"), rep.total);
    }
    Ok(r)
}
