//! Shared fixtures, random generators and independent oracles for the
//! integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use gvsm::groups::{make_element, make_permutation, GroupElement, GroupKind};
use gvsm::linalg::{householder, DenseMatrix, DenseVector};
use gvsm::vsm::{ingest_with_vocabulary, tfidf_weights, Corpus, TermDocumentMatrix, Vocabulary};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SAMPLE_CORPUS: [&str; 3] = [
    "term5 term1 term1 term5",
    "term2 term3 term3 term6 term4",
    "term2 term1 term2",
];

/// Reference term weights, rows term1..term6, columns D1..D3.
pub const SAMPLE_WEIGHTS: [[f64; 3]; 6] = [
    [0.352, 0.0, 0.176],
    [0.0, 0.176, 0.352],
    [0.0, 0.954, 0.0],
    [0.0, 0.477, 0.0],
    [0.954, 0.0, 0.0],
    [0.0, 0.477, 0.0],
];
pub const SAMPLE_IDF: [f64; 6] = [0.176, 0.176, 0.477, 0.477, 0.477, 0.477];
pub const SAMPLE_DF: [usize; 6] = [2, 2, 1, 1, 1, 1];

/// Rows 1 and 2 of the weights swapped.
pub const SWAPPED_WEIGHTS: [[f64; 3]; 6] = [
    [0.0, 0.176, 0.352],
    [0.352, 0.0, 0.176],
    [0.0, 0.954, 0.0],
    [0.0, 0.477, 0.0],
    [0.954, 0.0, 0.0],
    [0.0, 0.477, 0.0],
];

/// The weights under diag(2, 3, 2, 1, 1, 1).
pub const SCALED_WEIGHTS: [[f64; 3]; 6] = [
    [0.704, 0.0, 0.352],
    [0.0, 0.528, 1.056],
    [0.0, 1.908, 0.0],
    [0.0, 0.477, 0.0],
    [0.954, 0.0, 0.0],
    [0.0, 0.477, 0.0],
];

pub const SAMPLE_COSTS: [f64; 6] = [3.0, 4.0, 5.0, 6.0, 6.0, 7.0];

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn sample_vocab() -> Vocabulary {
    Vocabulary::from_terms((1..=6).map(|i| format!("term{i}"))).unwrap()
}

pub fn sample_corpus() -> Corpus {
    ingest_with_vocabulary(SAMPLE_CORPUS, &sample_vocab()).unwrap()
}

pub fn sample_tfidf() -> TermDocumentMatrix {
    tfidf_weights(&sample_corpus())
}

/// `u = (-√2/2, √2/2, 0, 0, 0, 0)`.
pub fn swap_axis() -> DenseVector {
    let r = std::f64::consts::SQRT_2 / 2.0;
    DenseVector::new(vec![-r, r, 0.0, 0.0, 0.0, 0.0]).unwrap()
}

pub fn swap_matrix() -> DenseMatrix {
    DenseMatrix::from_rows(&[
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ])
    .unwrap()
}

pub fn scaling_matrix() -> DenseMatrix {
    DenseMatrix::from_diagonal(&[2.0, 3.0, 2.0, 1.0, 1.0, 1.0]).unwrap()
}

/// The 4×4 operator with the 2×2 block [[3, 1], [1, 3]] and identity below.
pub fn block_operator() -> DenseMatrix {
    DenseMatrix::from_rows(&[
        [3.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
    .unwrap()
}

pub fn block_transition() -> DenseMatrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    DenseMatrix::from_rows(&[
        [r, -r, 0.0, 0.0],
        [r, r, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
    .unwrap()
}

/// 6×6 identity with a 1 in row 3, column 1.
pub fn lower_shear() -> DenseMatrix {
    let mut m = DenseMatrix::identity(6);
    m[(2, 0)] = 1.0;
    m
}

// ---------------------------------------------------------------- random

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
    DenseMatrix::new(rows, cols, data).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> DenseVector {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if v.iter().map(|x| x * x).sum::<f64>() > 1e-4 {
            return DenseVector::new(v).unwrap();
        }
    }
}

pub fn random_unit(rng: &mut impl Rng, n: usize) -> DenseVector {
    let v = random_vector(rng, n);
    let norm = v.norm();
    v.scaled(1.0 / norm)
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> DenseMatrix {
    let b = random_matrix(rng, n, n);
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = b[(i, j)] + b[(j, i)];
        }
    }
    a
}

/// Diagonally dominant, hence comfortably invertible.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> DenseMatrix {
    let mut m = random_matrix(rng, n, n);
    for i in 0..n {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        m[(i, i)] += sign * n as f64;
    }
    m
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn nonzero_factor(rng: &mut impl Rng) -> f64 {
    let mag = rng.gen_range(0.5..2.0);
    if rng.gen_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// Product of 3 to 6 random Householder reflections and a random
/// permutation.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> GroupElement {
    let mut m = make_permutation(&random_permutation(rng, n))
        .unwrap()
        .matrix()
        .clone();
    for _ in 0..rng.gen_range(3..=6) {
        let h = householder(&random_unit(rng, n)).unwrap();
        m = gvsm::linalg::mat_mul(&h, &m).unwrap();
    }
    make_element(m, GroupKind::Orthogonal).unwrap()
}

pub fn random_scaling(rng: &mut impl Rng, n: usize) -> GroupElement {
    let d: Vec<f64> = (0..n).map(|_| nonzero_factor(rng)).collect();
    make_element(DenseMatrix::from_diagonal(&d).unwrap(), GroupKind::Scaling).unwrap()
}

pub fn random_borel(rng: &mut impl Rng, n: usize) -> GroupElement {
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = nonzero_factor(rng);
        for j in (i + 1)..n {
            m[(i, j)] = rng.gen_range(-1.0..1.0);
        }
    }
    make_element(m, GroupKind::Borel).unwrap()
}

pub fn random_general(rng: &mut impl Rng, n: usize) -> GroupElement {
    make_element(random_invertible(rng, n), GroupKind::General).unwrap()
}

pub fn random_element(rng: &mut impl Rng, n: usize, kind: GroupKind) -> GroupElement {
    match kind {
        GroupKind::Orthogonal => random_orthogonal(rng, n),
        GroupKind::Scaling => random_scaling(rng, n),
        GroupKind::Borel => random_borel(rng, n),
        GroupKind::Permutation => make_permutation(&random_permutation(rng, n)).unwrap(),
        GroupKind::General => random_general(rng, n),
    }
}

/// Random corpus over a small alphabet; every line is nonempty.
pub fn random_corpus_lines(rng: &mut impl Rng, docs: usize, alphabet: usize) -> Vec<String> {
    (0..docs)
        .map(|_| {
            let len = rng.gen_range(1..8);
            (0..len)
                .map(|_| format!("w{}", rng.gen_range(0..alphabet)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

// --------------------------------------------------------------- oracles

pub fn to_rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn naive_mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for j in 0..p {
            let mut s = 0.0;
            for k in 0..m {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    let mut det = 0.0;
    for j in 0..n {
        let minor: Vec<Vec<f64>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * a[0][j] * cofactor_det(&minor);
    }
    det
}

/// Real roots of `det(A - λI)` for symmetric `A`, by scanning a grid
/// inside the Gershgorin interval and bisecting every sign change. The
/// grid is refined until `n` roots are found. Returned in descending order.
pub fn char_poly_roots(a: &[Vec<f64>]) -> Vec<f64> {
    let mut steps = 2_000;
    loop {
        let roots = char_poly_roots_on_grid(a, steps);
        if roots.len() >= a.len() || steps > 2_000_000 {
            return roots;
        }
        steps *= 10;
    }
}

fn char_poly_roots_on_grid(a: &[Vec<f64>], steps: usize) -> Vec<f64> {
    let n = a.len();
    let p = |lambda: f64| {
        let shifted: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a[i][j] - if i == j { lambda } else { 0.0 })
                    .collect()
            })
            .collect();
        cofactor_det(&shifted)
    };
    let radius = (0..n)
        .map(|i| a[i].iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let h = 2.0 * radius / steps as f64;
    let mut roots = Vec::new();
    let mut x0 = -radius;
    let mut f0 = p(x0);
    for s in 1..=steps {
        let x1 = -radius + s as f64 * h;
        let f1 = p(x1);
        if f1 == 0.0 {
            roots.push(x1);
        } else if f0 != 0.0 && f0.signum() != f1.signum() {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = p(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

/// Term counts of each line, by direct token scanning.
pub fn recount(lines: &[impl AsRef<str>]) -> Vec<HashMap<String, u32>> {
    lines
        .iter()
        .map(|l| {
            let mut m = HashMap::new();
            for t in l.as_ref().split_whitespace() {
                *m.entry(t.to_string()).or_insert(0) += 1;
            }
            m
        })
        .collect()
}

/// Sum of per-token costs over the raw text of a document.
pub fn token_walk_cost(line: &str, costs: &HashMap<String, f64>) -> f64 {
    line.split_whitespace().map(|t| costs[t]).sum()
}

pub fn max_abs_diff_rows(m: &DenseMatrix, expected: &[[f64; 3]]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in expected.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            worst = worst.max((m[(i, j)] - e).abs());
        }
    }
    worst
}
