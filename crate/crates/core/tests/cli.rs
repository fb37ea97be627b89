mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::*;
use gvsm::cli::parse_machine_block;
use gvsm::linalg::text::format_sig9;
use gvsm::vsm::index_file::parse_index;
use gvsm::vsm::{embed_query, rank};
use tempfile::TempDir;

fn gvsm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gvsm"))
        .args(args)
        .output()
        .unwrap()
}

fn machine(out: &Output) -> Vec<(String, String)> {
    parse_machine_block(&String::from_utf8_lossy(&out.stdout))
}

fn key<'a>(block: &'a [(String, String)], k: &str) -> &'a str {
    block
        .iter()
        .find(|(key, _)| key == k)
        .map(|(_, v)| v.as_str())
        .unwrap_or_else(|| panic!("missing key {k} in {block:?}"))
}

fn data(name: &str) -> String {
    data_path(name).to_string_lossy().into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Builds the sample index in `dir` and returns its path.
fn index(dir: &TempDir, weighting: &str) -> PathBuf {
    let out = dir.path().join(format!("{weighting}.idx"));
    let o = gvsm(&[
        "index",
        "--corpus",
        &data("sample_corpus.txt"),
        "--weighting",
        weighting,
        "--vocab",
        &data("terms.txt"),
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn index_reports_statistics_and_writes_table_weights() {
    let dir = TempDir::new().unwrap();
    let path = index(&dir, "tfidf");
    let tdm = parse_index(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(max_abs_diff_rows(tdm.weights(), &SAMPLE_WEIGHTS) < 1e-3);

    let o = gvsm(&[
        "index",
        "--corpus",
        &data("sample_corpus.txt"),
        "--weighting",
        "tfidf",
        "--vocab",
        &data("terms.txt"),
        "--out",
        s(&dir.path().join("again.idx")),
    ]);
    let m = machine(&o);
    assert_eq!(key(&m, "V"), "6");
    assert_eq!(key(&m, "N"), "3");
    assert_eq!(key(&m, "df_term1"), "2");
    assert_eq!(key(&m, "idf_term1"), "0.176091259");
    assert_eq!(key(&m, "idf_term3"), "0.477121255");
}

#[test]
fn index_with_first_occurrence_order() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.idx");
    let o = gvsm(&[
        "index",
        "--corpus",
        &data("sample_corpus.txt"),
        "--weighting",
        "freq",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        text.lines().nth(3),
        Some("term5 term1 term2 term3 term6 term4")
    );
}

#[test]
fn single_document_index_has_zero_idf() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("one.txt");
    std::fs::write(&corpus, "a b b\n").unwrap();
    let out = dir.path().join("one.idx");
    let o = gvsm(&[
        "index",
        "--corpus",
        s(&corpus),
        "--weighting",
        "tfidf",
        "--out",
        s(&out),
    ]);
    let m = machine(&o);
    assert_eq!(key(&m, "idf_a"), "0");
    assert_eq!(key(&m, "idf_b"), "0");
}

#[test]
fn index_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.idx");
    let missing = gvsm(&[
        "index",
        "--corpus",
        "/nonexistent/corpus",
        "--weighting",
        "tfidf",
        "--out",
        s(&out),
    ]);
    assert_eq!(missing.status.code(), Some(1));

    let blank = dir.path().join("blank.txt");
    std::fs::write(&blank, "a b\n\nc\n").unwrap();
    let o = gvsm(&[
        "index",
        "--corpus",
        s(&blank),
        "--weighting",
        "tfidf",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let o = gvsm(&[
        "index",
        "--corpus",
        s(&empty),
        "--weighting",
        "tfidf",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));

    let o = gvsm(&[
        "index",
        "--corpus",
        s(&blank),
        "--weighting",
        "bm25",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(gvsm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gvsm(&["--help"]).status.code(), Some(0));
}

#[test]
fn query_ranks_the_sample_corpus() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");
    let o = gvsm(&[
        "query",
        "--index",
        s(&idx),
        "--text",
        "term1 term2",
        "--top",
        "3",
    ]);
    assert!(o.status.success());
    let m = machine(&o);
    let ranks: Vec<(usize, f64)> = (1..=3)
        .map(|i| {
            let (d, sc) = key(&m, &format!("rank_{i}")).split_once(':').unwrap();
            (d.parse().unwrap(), sc.parse().unwrap())
        })
        .collect();
    assert_eq!(ranks.iter().map(|r| r.0).collect::<Vec<_>>(), vec![3, 1, 2]);
    for (got, want) in ranks.iter().zip([0.949, 0.245, 0.105]) {
        assert!((got.1 - want).abs() < 1e-3);
    }

    // Same numbers as the library on the same index.
    let tdm = parse_index(&std::fs::read_to_string(&idx).unwrap()).unwrap();
    let lib = rank(&embed_query("term1 term2", &tdm).unwrap(), &tdm).unwrap();
    for (i, e) in lib.entries().iter().enumerate() {
        assert_eq!(
            key(&m, &format!("rank_{}", i + 1)),
            format!("{}:{}", e.doc_id, format_sig9(e.score))
        );
    }
}

#[test]
fn query_top_k_and_errors() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");
    let o = gvsm(&[
        "query",
        "--index",
        s(&idx),
        "--text",
        "term1",
        "--top",
        "10",
    ]);
    assert_eq!(key(&machine(&o), "n_results"), "3");
    let o = gvsm(&["query", "--index", s(&idx), "--text", "term1", "--top", "1"]);
    assert_eq!(key(&machine(&o), "n_results"), "1");

    let o = gvsm(&[
        "query",
        "--index",
        s(&idx),
        "--text",
        "unknown words",
        "--top",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no in-vocabulary terms"));
    let o = gvsm(&["query", "--index", s(&idx), "--text", "term1", "--top", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn transform_with_swap_and_scaling() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");
    let out = dir.path().join("swapped.idx");
    let o = gvsm(&[
        "transform",
        "--index",
        s(&idx),
        "--matrix",
        &data("swap12.txt"),
        "--out",
        s(&out),
    ]);
    assert!(o.status.success());
    let m = machine(&o);
    assert_eq!(key(&m, "kind"), "orthogonal");
    assert_eq!(key(&m, "det"), "-1");
    assert_eq!(key(&m, "cosine_guaranteed"), "true");
    let swapped = parse_index(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(max_abs_diff_rows(swapped.weights(), &SWAPPED_WEIGHTS) < 1e-3);

    let out = dir.path().join("scaled.idx");
    let o = gvsm(&[
        "transform",
        "--index",
        s(&idx),
        "--matrix",
        &data("scaling.txt"),
        "--out",
        s(&out),
    ]);
    assert_eq!(key(&machine(&o), "cosine_guaranteed"), "false");
    let scaled = parse_index(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((scaled.weights()[(1, 2)] - 1.056).abs() < 1e-3);
    assert!(max_abs_diff_rows(scaled.weights(), &SCALED_WEIGHTS) < 1e-3);

    // Transformed query against transformed index ranks like the original.
    let o = gvsm(&[
        "query",
        "--index",
        s(&dir.path().join("swapped.idx")),
        "--text",
        "term1 term2",
        "--top",
        "3",
        "--matrix",
        &data("swap12.txt"),
    ]);
    assert_eq!(key(&machine(&o), "rank_1"), "3:0.948683298");
}

#[test]
fn identity_transform_keeps_weight_block() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");
    let id = dir.path().join("id.txt");
    let rows: String = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| if i == j { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect();
    std::fs::write(&id, format!("kind: general\n6 6\n{rows}")).unwrap();
    let out = dir.path().join("same.idx");
    assert!(gvsm(&[
        "transform",
        "--index",
        s(&idx),
        "--matrix",
        s(&id),
        "--out",
        s(&out)
    ])
    .status
    .success());
    let before = std::fs::read_to_string(&idx).unwrap();
    let after = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        before.lines().skip(2).collect::<Vec<_>>(),
        after.lines().skip(2).collect::<Vec<_>>()
    );
    assert_eq!(after.lines().nth(1), Some("tfidf+transformed"));

    let o = gvsm(&["verify", "--index", s(&idx), "--matrix", s(&id)]);
    assert_eq!(o.status.code(), Some(0));
    let m = machine(&o);
    for check in ["cosine", "norm", "flag", "pairing"] {
        assert_eq!(key(&m, &format!("{check}_max_deviation")), "0", "{check}");
        assert_eq!(key(&m, &format!("{check}_holds")), "true");
    }
}

#[test]
fn transform_rejects_bad_matrices() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");
    let out = dir.path().join("o.idx");
    let bad_kind = dir.path().join("bad.txt");
    std::fs::write(
        &bad_kind,
        std::fs::read_to_string(data_path("scaling.txt"))
            .unwrap()
            .replace("scaling", "orthogonal"),
    )
    .unwrap();
    let o = gvsm(&[
        "transform",
        "--index",
        s(&idx),
        "--matrix",
        s(&bad_kind),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not orthogonal"));

    let small = dir.path().join("small.txt");
    std::fs::write(&small, "kind: general\n2 2\n1 0\n0 1\n").unwrap();
    let o = gvsm(&[
        "transform",
        "--index",
        s(&idx),
        "--matrix",
        s(&small),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("6 terms"));
    assert!(!out.exists());
}

#[test]
fn verify_reports_guaranteed_and_measured_checks() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");

    let o = gvsm(&[
        "verify",
        "--index",
        s(&idx),
        "--matrix",
        &data("swap12.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m = machine(&o);
    assert_eq!(key(&m, "cosine_status"), "pass");
    assert!(key(&m, "cosine_max_deviation").parse::<f64>().unwrap() < 1e-9);
    assert_eq!(key(&m, "flag_status"), "not-guaranteed");
    assert_eq!(key(&m, "overall"), "pass");

    let o = gvsm(&[
        "verify",
        "--index",
        s(&idx),
        "--matrix",
        &data("scaling.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m = machine(&o);
    assert_eq!(key(&m, "cosine_status"), "not-guaranteed");
    assert_eq!(key(&m, "cosine_holds"), "false");
    assert!(key(&m, "cosine_max_deviation").parse::<f64>().unwrap() > 1e-9);
    assert_eq!(key(&m, "flag_status"), "pass");
    assert!(String::from_utf8_lossy(&o.stdout).contains("NOT GUARANTEED"));

    let o = gvsm(&[
        "verify",
        "--index",
        s(&idx),
        "--matrix",
        &data("lower_shear.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(key(&machine(&o), "flag_holds"), "false");
}

#[test]
fn verify_exits_two_when_a_guaranteed_check_fails() {
    // Condition number near 4e10: the pairing identity holds exactly but
    // not in floating point at the 1e-9 tolerance.
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");
    let ill = dir.path().join("ill.txt");
    std::fs::write(
        &ill,
        "kind: general\n6 6\n1 1 0 0 0 0\n1 1.0000000001 0 0 0 0\n0 0 1 0 0 0\n0 0 0 1 0 0\n0 0 0 0 1 0\n0 0 0 0 0 1\n",
    )
    .unwrap();
    let o = gvsm(&["verify", "--index", s(&idx), "--matrix", s(&ill)]);
    let m = machine(&o);
    assert_eq!(key(&m, "pairing_status"), "fail");
    assert_eq!(key(&m, "overall"), "fail");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cost_totals() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "freq");
    let o = gvsm(&["cost", "--index", s(&idx), "--costs", &data("costs.txt")]);
    assert!(o.status.success());
    let m = machine(&o);
    assert_eq!(key(&m, "cost_2"), "27");
    assert_eq!(key(&m, "paired_with"), "counts");

    let costs: std::collections::HashMap<String, f64> = (1..=6)
        .map(|i| (format!("term{i}"), SAMPLE_COSTS[i - 1]))
        .collect();
    for (j, line) in SAMPLE_CORPUS.iter().enumerate() {
        assert_eq!(
            key(&m, &format!("cost_{}", j + 1)),
            format_sig9(token_walk_cost(line, &costs))
        );
    }

    let o = gvsm(&[
        "cost",
        "--index",
        s(&idx),
        "--costs",
        &data("costs.txt"),
        "--doc",
        "2",
    ]);
    let m = machine(&o);
    assert_eq!(key(&m, "cost_2"), "27");
    assert!(m.iter().all(|(k, _)| k != "cost_1"));

    let zero = dir.path().join("zero.txt");
    std::fs::write(
        &zero,
        (1..=6).map(|i| format!("term{i} 0\n")).collect::<String>(),
    )
    .unwrap();
    let m = machine(&gvsm(&["cost", "--index", s(&idx), "--costs", s(&zero)]));
    assert_eq!(
        (key(&m, "cost_1"), key(&m, "cost_2"), key(&m, "cost_3")),
        ("0", "0", "0")
    );
}

#[test]
fn cost_errors() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "freq");
    let partial = dir.path().join("partial.txt");
    std::fs::write(&partial, "term1 3\nterm2 4\n").unwrap();
    let o = gvsm(&["cost", "--index", s(&idx), "--costs", s(&partial)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("term3"));

    let unknown = dir.path().join("unknown.txt");
    std::fs::write(&unknown, "zebra 1\n").unwrap();
    assert_eq!(
        gvsm(&["cost", "--index", s(&idx), "--costs", s(&unknown)])
            .status
            .code(),
        Some(1)
    );
    let o = gvsm(&[
        "cost",
        "--index",
        s(&idx),
        "--costs",
        &data("costs.txt"),
        "--doc",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn machine_blocks_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let idx = index(&dir, "tfidf");
    let runs: Vec<Vec<(String, String)>> = (0..2)
        .map(|_| {
            machine(&gvsm(&[
                "verify",
                "--index",
                s(&idx),
                "--matrix",
                &data("scaling.txt"),
            ]))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let q: Vec<_> = (0..2)
        .map(|_| {
            gvsm(&[
                "query",
                "--index",
                s(&idx),
                "--text",
                "term1 term2",
                "--top",
                "3",
            ])
            .stdout
        })
        .collect();
    assert_eq!(q[0], q[1]);
}
