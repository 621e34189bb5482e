#![allow(dead_code)]

use fbk_core::linalg;
use fbk_core::{
    CommRing, DynMatrix, LinearSystem, Matrix, MatrixRing, RingDescriptor, RingElement,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn entry(ring: &RingDescriptor, rng: &mut ChaCha8Rng) -> RingElement {
    match ring {
        RingDescriptor::Rationals => {
            let num = rng.gen_range(-5i64..=5);
            let den = rng.gen_range(1i64..=3);
            RingElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
        RingDescriptor::PrimeField(f) => RingElement::Residue(rng.gen_range(0..f.modulus())),
        RingDescriptor::Integers => RingElement::Integer(BigInt::from(rng.gen_range(-3i64..=3))),
        RingDescriptor::PolyQuotient(_) => unreachable!("no random quotient-ring entries"),
    }
}

/// Mostly small entries, with zeros made more likely so that
/// non-generic systems show up.
pub fn matrix(ring: &RingDescriptor, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DynMatrix {
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(0.3) {
            ring.zero()
        } else {
            entry(ring, rng)
        }
    })
}

pub fn invertible(ring: &RingDescriptor, n: usize, rng: &mut ChaCha8Rng) -> DynMatrix {
    if ring.is_field() {
        loop {
            let m = Matrix::from_fn(n, n, |_, _| entry(ring, rng));
            if !ring.is_zero(&linalg::det(ring, &m).unwrap()) {
                return m;
            }
        }
    }
    // Integers: a product of elementary moves.
    let mut m = ring.identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = ring.from_i64(rng.gen_range(-2i64..=2));
        for k in 0..n {
            let v = ring.add(m.get(i, k), &ring.mul(&c, m.get(j, k)));
            m.set(i, k, v);
        }
    }
    m
}

pub fn inverse(ring: &RingDescriptor, m: &DynMatrix) -> DynMatrix {
    linalg::solve_right(ring, m, &ring.identity(m.rows())).unwrap()
}

pub fn system(ring: &RingDescriptor, n: usize, m: usize, rng: &mut ChaCha8Rng) -> LinearSystem {
    LinearSystem::from_pair(
        ring.clone(),
        matrix(ring, n, n, rng),
        matrix(ring, n, m, rng),
    )
    .unwrap()
}

/// A random system passing the reachability test, with dense entries.
pub fn reachable_pair(
    ring: &RingDescriptor,
    n: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> (DynMatrix, DynMatrix) {
    loop {
        let a = matrix(ring, n, n, rng);
        let b = matrix(ring, n, m, rng);
        let s = LinearSystem::from_pair(ring.clone(), a.clone(), b.clone()).unwrap();
        if fbk_core::compute_chain(&s).unwrap().reachable {
            return (a, b);
        }
    }
}

/// Row-style Hermite form check: echelon, positive pivots, entries above
/// each pivot in `[0, pivot)`.
pub fn is_row_hnf(h: &Matrix<BigInt>) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut zero_rows = false;
    for i in 0..h.rows() {
        let lead = (0..h.cols()).find(|&j| h.get(i, j) != &BigInt::from(0));
        match lead {
            None => zero_rows = true,
            Some(j) => {
                if zero_rows || last_pivot.is_some_and(|p| j <= p) {
                    return false;
                }
                let piv = h.get(i, j);
                if piv <= &BigInt::from(0) {
                    return false;
                }
                for k in 0..i {
                    let e = h.get(k, j);
                    if e < &BigInt::from(0) || e >= piv {
                        return false;
                    }
                }
                last_pivot = Some(j);
            }
        }
    }
    true
}
