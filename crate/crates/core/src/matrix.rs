//! Dense row-major matrices over an arbitrary element type.
//!
//! Storage is ring-agnostic; arithmetic goes through [`MatrixRing`], which
//! every [`CommRing`] gets for free.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{CommRing, RingDescriptor, RingElement, TypedRing};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_fn(nrows, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn column_matrix(&self, j: usize) -> Matrix<T> {
        self.select_columns(&[j])
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix<T> {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<T> {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Matrix<T> {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot place {}x{} beside {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {}x{} over {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(
            self.rows + other.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j).clone()
                } else {
                    other.get(i - self.rows, j).clone()
                }
            },
        ))
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        f.write_str("]")
    }
}

/// Matrix arithmetic over a ring context.
pub trait MatrixRing: CommRing {
    fn zeros(&self, rows: usize, cols: usize) -> Matrix<Self::Elem> {
        Matrix::filled(rows, cols, self.zero())
    }

    fn identity(&self, n: usize) -> Matrix<Self::Elem> {
        Matrix::from_fn(n, n, |i, j| if i == j { self.one() } else { self.zero() })
    }

    fn mat_from_i64(&self, rows: &[&[i64]]) -> Matrix<Self::Elem> {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), ncols, |i, j| self.from_i64(rows[i][j]))
    }

    fn mat_mul(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.cols(), b.rows(), "mat_mul: inner dimensions differ");
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            let mut acc = self.zero();
            for k in 0..a.cols() {
                let x = a.get(i, k);
                if self.is_zero(x) {
                    continue;
                }
                acc = self.add(&acc, &self.mul(x, b.get(k, j)));
            }
            acc
        })
    }

    fn try_mat_mul(
        &self,
        a: &Matrix<Self::Elem>,
        b: &Matrix<Self::Elem>,
    ) -> Result<Matrix<Self::Elem>> {
        if a.cols() != b.rows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(self.mat_mul(a, b))
    }

    fn mat_add(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.shape(), b.shape(), "mat_add: shapes differ");
        Matrix::from_fn(a.rows(), a.cols(), |i, j| {
            self.add(a.get(i, j), b.get(i, j))
        })
    }

    fn mat_sub(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.shape(), b.shape(), "mat_sub: shapes differ");
        Matrix::from_fn(a.rows(), a.cols(), |i, j| {
            self.sub(a.get(i, j), b.get(i, j))
        })
    }

    fn mat_neg(&self, a: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        a.map(|x| self.neg(x))
    }

    fn mat_is_zero(&self, a: &Matrix<Self::Elem>) -> bool {
        a.entries().iter().all(|x| self.is_zero(x))
    }

    /// Block diagonal `diag(a, b)` in Bass notation.
    fn block_diag(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        let (ra, ca) = a.shape();
        Matrix::from_fn(ra + b.rows(), ca + b.cols(), |i, j| {
            match (i < ra, j < ca) {
                (true, true) => a.get(i, j).clone(),
                (false, false) => b.get(i - ra, j - ca).clone(),
                _ => self.zero(),
            }
        })
    }

    fn format_matrix(&self, a: &Matrix<Self::Elem>) -> String {
        let cells: Vec<Vec<String>> = (0..a.rows())
            .map(|i| (0..a.cols()).map(|j| self.format(a.get(i, j))).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for row in &cells {
            out.push('[');
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{c:>width$}"));
            }
            out.push_str("]\n");
        }
        out
    }
}

impl<R: CommRing> MatrixRing for R {}

/// Converts a tagged matrix into a concrete ring's element type.
pub fn lower_matrix<R: TypedRing>(ring: &R, m: &Matrix<RingElement>) -> Matrix<R::Elem> {
    m.map(|e| ring.lower(e))
}

pub fn lift_matrix<R: TypedRing>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<RingElement> {
    m.map(|e| ring.lift(e))
}

/// Parses a row-major list of literals into a matrix over `ring`.
pub fn parse_matrix(
    ring: &RingDescriptor,
    rows: usize,
    cols: usize,
    entries: &[impl AsRef<str>],
) -> Result<Matrix<RingElement>> {
    if entries.len() != rows * cols {
        return Err(Error::Shape(format!(
            "{} entries for a {rows}x{cols} matrix",
            entries.len()
        )));
    }
    let data = entries
        .iter()
        .map(|e| ring.parse_element(e.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(rows, cols, data)
}
