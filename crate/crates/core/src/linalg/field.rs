//! Gaussian elimination over a field.

use crate::matrix::{Matrix, MatrixRing};
use crate::ring::Field;

/// Reduced row-echelon form with the row transform that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<E> {
    /// `transform * input`.
    pub reduced: Matrix<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Invertible, `transform * input == reduced`.
    pub transform: Matrix<E>,
}

pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let (rows, cols) = m.shape();
    let mut r = m.clone();
    let mut t = field.identity(rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !field.is_zero(r.get(i, col))) else {
            continue;
        };
        r.swap_rows(row, p);
        t.swap_rows(row, p);
        let inv = field.inv(r.get(row, col));
        scale_row(field, &mut r, row, &inv);
        scale_row(field, &mut t, row, &inv);
        for i in 0..rows {
            if i == row {
                continue;
            }
            let factor = r.get(i, col).clone();
            if field.is_zero(&factor) {
                continue;
            }
            axpy_row(field, &mut r, i, row, &factor);
            axpy_row(field, &mut t, i, row, &factor);
        }
        pivots.push(col);
        row += 1;
    }
    Rref {
        reduced: r,
        rank: pivots.len(),
        pivots,
        transform: t,
    }
}

fn scale_row<F: Field>(field: &F, m: &mut Matrix<F::Elem>, row: usize, s: &F::Elem) {
    for j in 0..m.cols() {
        let v = field.mul(m.get(row, j), s);
        m.set(row, j, v);
    }
}

/// `m[target] -= factor * m[source]`.
fn axpy_row<F: Field>(
    field: &F,
    m: &mut Matrix<F::Elem>,
    target: usize,
    source: usize,
    factor: &F::Elem,
) {
    for j in 0..m.cols() {
        let v = field.sub(m.get(target, j), &field.mul(factor, m.get(source, j)));
        m.set(target, j, v);
    }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).rank
}

/// Some `X` with `a * X == b`, or `None` if the system is inconsistent.
pub fn solve_right<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows(), b.rows(), "solve_right: row counts differ");
    let red = rref(field, a);
    let tb = field.mat_mul(&red.transform, b);
    for i in red.rank..a.rows() {
        if (0..b.cols()).any(|j| !field.is_zero(tb.get(i, j))) {
            return None;
        }
    }
    let mut x = field.zeros(a.cols(), b.cols());
    for (i, &pc) in red.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(pc, j, tb.get(i, j).clone());
        }
    }
    Some(x)
}

/// Columns form a basis of the right kernel.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let red = rref(field, m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !red.pivots.contains(c)).collect();
    let mut k = field.zeros(m.cols(), free.len());
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, field.one());
        for (i, &pc) in red.pivots.iter().enumerate() {
            k.set(pc, col, field.neg(red.reduced.get(i, f)));
        }
    }
    k
}

/// Basis of the column span in reduced column-echelon form. Two generator
/// matrices span the same subspace iff their canonical spans are equal.
pub fn canonical_span<F: Field>(field: &F, g: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let red = rref(field, &g.transpose());
    red.reduced
        .select_rows(&(0..red.rank).collect::<Vec<_>>())
        .transpose()
}

pub fn det<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert!(m.is_square(), "det of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut acc = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !field.is_zero(a.get(i, col))) else {
            return field.zero();
        };
        if p != col {
            a.swap_rows(p, col);
            acc = field.neg(&acc);
        }
        let pivot = a.get(col, col).clone();
        acc = field.mul(&acc, &pivot);
        let inv = field.inv(&pivot);
        for i in col + 1..n {
            let factor = field.mul(a.get(i, col), &inv);
            if !field.is_zero(&factor) {
                axpy_row(field, &mut a, i, col, &factor);
            }
        }
    }
    acc
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert!(m.is_square());
    let red = rref(field, m);
    (red.rank == m.rows()).then_some(red.transform)
}
