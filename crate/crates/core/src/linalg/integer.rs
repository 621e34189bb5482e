//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AbelianGroupStructure;
use crate::matrix::{Matrix, MatrixRing};
use crate::ring::Integers;

pub type IntMatrix = Matrix<BigInt>;

/// `U * A * V == D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...`, including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    // m[target] -= q * m[source]
    for j in 0..m.cols() {
        let v = m.get(target, j) - q * m.get(source, j);
        m.set(target, j, v);
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = m.get(i, target) - q * m.get(i, source);
        m.set(i, target, v);
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -m.get(r, j);
        m.set(r, j, v);
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U * M == H`,
/// `U` unimodular, `H` in row echelon form with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let z = Integers;
    let (rows, cols) = m.shape();
    let mut h = m.clone();
    let mut u = z.identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // Smallest nonzero |entry| at or below the pivot row.
            let best = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&pivot);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let z = Integers;
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = z.identity(rows);
    let mut v = z.identity(cols);
    for t in 0..rows.min(cols) {
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&a, &b| d.get(a.0, a.1).abs().cmp(&d.get(b.0, b.1).abs()));
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived; move the
                // smallest entry of row/column t into the pivot slot.
                let col_best = (t..rows)
                    .filter(|&i| !d.get(i, t).is_zero())
                    .min_by(|&a, &b| d.get(a, t).abs().cmp(&d.get(b, t).abs()))
                    .unwrap();
                let row_best = (t..cols)
                    .filter(|&j| !d.get(t, j).is_zero())
                    .min_by(|&a, &b| d.get(t, a).abs().cmp(&d.get(t, b).abs()))
                    .unwrap();
                if d.get(col_best, t).abs() <= d.get(t, row_best).abs() {
                    d.swap_rows(t, col_best);
                    u.swap_rows(t, col_best);
                } else {
                    d.swap_cols(t, row_best);
                    v.swap_cols(t, row_best);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    // row_t += row_i brings the offending entry into row t.
                    row_axpy(&mut d, t, i, &BigInt::from(-1));
                    row_axpy(&mut u, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithDecomposition { u, v, d }
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "det of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Some integral `X` with `a * X == b`, or `None`.
pub fn solve_right(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve_right: row counts differ");
    let z = Integers;
    let s = snf(a);
    // D * Y = U * B with X = V * Y.
    let ub = z.mat_mul(&s.u, b);
    let diag = s.diagonal();
    let rank = s.rank();
    let mut y = z.zeros(a.cols(), b.cols());
    for j in 0..b.cols() {
        for (i, di) in diag.iter().enumerate().take(rank) {
            let (q, r) = ub.get(i, j).div_rem(di);
            if !r.is_zero() {
                return None;
            }
            y.set(i, j, q);
        }
        if (rank..a.rows()).any(|i| !ub.get(i, j).is_zero()) {
            return None;
        }
    }
    Some(z.mat_mul(&s.v, &y))
}

/// Column-style canonical lattice basis of the column span: the transpose
/// of the nonzero rows of `hnf(g^T)`.
pub fn canonical_span(g: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(&g.transpose());
    let nonzero: Vec<usize> = (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h.get(i, j).is_zero()))
        .collect();
    h.select_rows(&nonzero).transpose()
}

/// Lattice basis of the integer kernel, canonicalized.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let free: Vec<usize> = (s.rank()..m.cols()).collect();
    canonical_span(&s.v.select_columns(&free))
}

/// Structure of `Z^ambient / col(g)`.
pub fn cokernel_structure(g: &IntMatrix, ambient: usize) -> AbelianGroupStructure {
    assert_eq!(
        g.rows(),
        ambient,
        "generators must live in the ambient lattice"
    );
    let s = snf(g);
    let diag = s.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    AbelianGroupStructure {
        free_rank: ambient - nonzero,
        torsion: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> IntMatrix {
        Integers.mat_from_i64(rows)
    }

    #[test]
    fn hnf_of_diagonal_is_itself() {
        let m = z(&[&[2, 0], &[0, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, m);
        assert_eq!(Integers.mat_mul(&u, &m), h);
    }

    #[test]
    fn hnf_of_column_is_gcd() {
        let m = z(&[&[4], &[6]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, z(&[&[2], &[0]]));
        assert_eq!(Integers.mat_mul(&u, &m), h);
        assert_eq!(det(&u).abs(), BigInt::one());
    }

    #[test]
    fn hnf_of_zero() {
        let m = z(&[&[0, 0], &[0, 0]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, m);
        assert_eq!(u, Integers.identity(2));
    }

    #[test]
    fn snf_of_coprime_diagonal() {
        let m = z(&[&[2, 0], &[0, 3]]);
        let s = snf(&m);
        assert_eq!(s.d, z(&[&[1, 0], &[0, 6]]));
        let lhs = Integers.mat_mul(&Integers.mat_mul(&s.u, &m), &s.v);
        assert_eq!(lhs, s.d);
    }

    #[test]
    fn snf_trivial_cases() {
        assert_eq!(snf(&Integers.identity(3)).d, Integers.identity(3));
        assert_eq!(snf(&z(&[&[0]])).d, z(&[&[0]]));
    }

    #[test]
    fn integral_solving() {
        assert!(solve_right(&z(&[&[2]]), &z(&[&[3]])).is_none());
        assert_eq!(solve_right(&z(&[&[2]]), &z(&[&[4]])).unwrap(), z(&[&[2]]));
        let b = z(&[&[1, 2], &[3, 4]]);
        assert_eq!(solve_right(&Integers.identity(2), &b).unwrap(), b);
    }

    #[test]
    fn cokernels() {
        let free3 = cokernel_structure(&Integers.zeros(3, 1), 3);
        assert_eq!(free3.free_rank, 3);
        assert!(free3.torsion.is_empty());
        let z2 = cokernel_structure(&z(&[&[2]]), 1);
        assert_eq!(
            (z2.free_rank, z2.torsion.clone()),
            (0, vec![BigInt::from(2)])
        );
        let z6 = cokernel_structure(&z(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!((z6.free_rank, z6.torsion), (0, vec![BigInt::from(6)]));
    }

    #[test]
    fn span_of_two_and_three_is_everything() {
        let g = z(&[&[2, 3]]);
        assert_eq!(canonical_span(&g), z(&[&[1]]));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = z(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) = -52 - 2 = -54
        assert_eq!(det(&m), BigInt::from(-54));
        assert_eq!(det(&z(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }
}
