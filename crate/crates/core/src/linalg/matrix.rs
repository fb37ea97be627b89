use std::fmt;
use std::ops::{Index, IndexMut};

use super::LinalgError;

/// Dense real vector. Entries are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    entries: Vec<f64>,
}

impl DenseVector {
    pub fn new(entries: Vec<f64>) -> Result<Self, LinalgError> {
        if entries.is_empty() {
            return Err(LinalgError::EmptyDimension);
        }
        if let Some(pos) = entries.iter().position(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: pos,
                col: 0,
                value: entries[pos],
            });
        }
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Self {
            entries: vec![0.0; dim],
        }
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.entries.iter()
    }

    /// Plain dot product. Panics on dimension mismatch; the checked
    /// variant lives in `vsm::inner_product`.
    pub fn dot(&self, other: &DenseVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, k: f64) -> DenseVector {
        DenseVector {
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &DenseVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff: dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for DenseVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.entries[i]
    }
}

impl From<DenseVector> for Vec<f64> {
    fn from(v: DenseVector) -> Self {
        v.entries
    }
}

/// Dense real matrix stored row-major. Both dimensions are positive and
/// every entry is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: pos / cols,
                col: pos % cols,
                value: data[pos],
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::EntryCount {
                    rows: rows.len(),
                    cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[DenseVector]) -> Result<Self, LinalgError> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, DenseVector::dim);
        if columns.iter().any(|c| c.dim() != rows) {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                found: columns.iter().map(DenseVector::dim).sum(),
            });
        }
        let mut m = Self::zeros_checked(rows, cols)?;
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = c[i];
            }
        }
        Ok(m)
    }

    fn zeros_checked(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        Ok(Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::zeros_checked(rows, cols).expect("matrix dimensions must be positive")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros_checked(diag.len(), diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(LinalgError::NonFinite {
                    row: i,
                    col: i,
                    value: d,
                });
            }
            m[(i, i)] = d;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> DenseVector {
        DenseVector {
            entries: (0..self.rows).map(|i| self[(i, j)]).collect(),
        }
    }

    pub fn columns(&self) -> Vec<DenseVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self · v` with `v` treated as a column.
    pub fn mul_vec(&self, v: &DenseVector) -> Result<DenseVector, LinalgError> {
        if self.cols != v.dim() {
            return Err(LinalgError::Shape {
                op: "mul_vec",
                left: self.shape(),
                right: (v.dim(), 1),
            });
        }
        let entries = (0..self.rows)
            .map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum())
            .collect();
        Ok(DenseVector { entries })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest entrywise difference. Panics if shapes differ.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff: shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|a[i,j] - a[j,i]|`; only meaningful for square matrices.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && self.asymmetry() <= tol
    }

    /// Largest magnitude off the main diagonal.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    worst = worst.max(self[(i, j)].abs());
                }
            }
        }
        worst
    }

    pub(crate) fn sub_scaled_identity(&self, lambda: f64) -> DenseMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= lambda;
        }
        m
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>10.4}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
