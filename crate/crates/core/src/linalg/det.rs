use crate::matrix::Matrix;
use crate::ring::CommRing;

/// Division-free determinant by Laplace expansion over row prefixes:
/// `acc[S]` is the signed sum over injections of the first `|S|` rows
/// onto the column set `S`. `O(n 2^n)` ring operations, valid in any
/// commutative ring.
pub fn det_division_free<R: CommRing>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert!(m.is_square(), "det of a non-square matrix");
    let n = m.rows();
    assert!(n <= 20, "division-free determinant limited to n <= 20");
    let mut acc: Vec<Option<R::Elem>> = vec![None; 1 << n];
    acc[0] = Some(ring.one());
    for mask in 0usize..(1 << n) {
        let Some(val) = acc[mask].clone() else {
            continue;
        };
        if ring.is_zero(&val) {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let entry = m.get(row, col);
            if ring.is_zero(entry) {
                continue;
            }
            // Sign of placing `col` after the columns already used: one
            // transposition per used column to its right.
            let inversions = (mask >> col).count_ones();
            let mut term = ring.mul(&val, entry);
            if inversions % 2 == 1 {
                term = ring.neg(&term);
            }
            let slot = &mut acc[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(prev) => ring.add(&prev, &term),
                None => term,
            });
        }
    }
    acc[(1 << n) - 1].clone().unwrap_or_else(|| ring.zero())
}
