//! Exhaustive feedback-orbit search over tiny prime fields.
//!
//! Pairs are stored as 3×3 byte arrays padded with zeros, so all
//! arithmetic here is independent of the generic linear algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::equivalence::feedback_equivalent;
use crate::error::{Error, Result};
use crate::invariants::z_signature;
use crate::matrix::Matrix;
use crate::ring::{CommRing, RingDescriptor, RingElement};
use crate::system::{DynMatrix, LinearSystem};

pub const MAX_STATES: usize = 3;
pub const MAX_INPUTS: usize = 2;

pub type SmallMat = [[u8; 3]; 3];

/// A matrix pair `(A, B)` with `A` of size `n×n` and `B` of size `n×m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallPair {
    pub n: usize,
    pub m: usize,
    pub a: SmallMat,
    pub b: SmallMat,
}

fn check_bounds(p: u64, n: usize, m: usize) -> Result<()> {
    if p != 2 && p != 3 {
        return Err(Error::BoundExceeded(format!(
            "orbit search needs p in {{2, 3}}, got {p}"
        )));
    }
    if n > MAX_STATES || m > MAX_INPUTS {
        return Err(Error::BoundExceeded(format!(
            "orbit search needs n <= {MAX_STATES} and m <= {MAX_INPUTS}, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

fn mul(p: u8, x: &SmallMat, y: &SmallMat, rows: usize, inner: usize, cols: usize) -> SmallMat {
    let mut out = [[0u8; 3]; 3];
    for i in 0..rows {
        for j in 0..cols {
            let mut acc = 0u16;
            for k in 0..inner {
                acc += x[i][k] as u16 * y[k][j] as u16;
            }
            out[i][j] = (acc % p as u16) as u8;
        }
    }
    out
}

fn sub(p: u8, x: &SmallMat, y: &SmallMat) -> SmallMat {
    let mut out = [[0u8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (x[i][j] + p - y[i][j]) % p;
        }
    }
    out
}

/// All `rows×cols` matrices over GF(p), in lexicographic order.
fn all_matrices(p: u8, rows: usize, cols: usize) -> Vec<SmallMat> {
    let cells = rows * cols;
    let total = (p as usize).pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut m = [[0u8; 3]; 3];
            for c in (0..cells).rev() {
                m[c / cols][c % cols] = (code % p as usize) as u8;
                code /= p as usize;
            }
            m
        })
        .collect()
}

/// Reduced row-echelon form mod p and its rank.
fn rref(p: u8, m: &SmallMat, rows: usize, cols: usize) -> (SmallMat, usize) {
    let mut a = *m;
    let w = p as u16;
    let inv = |x: u8| (1..p).find(|&y| (x as u16 * y as u16) % w == 1).unwrap();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let s = inv(a[r][c]);
        for j in 0..cols {
            a[r][j] = ((a[r][j] as u16 * s as u16) % w) as u8;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] as u16;
                for j in 0..cols {
                    let t = (f * a[r][j] as u16) % w;
                    a[i][j] = ((a[i][j] as u16 + w - t) % w) as u8;
                }
            }
        }
        r += 1;
    }
    (a, r)
}

fn rank(p: u8, m: &SmallMat, rows: usize, cols: usize) -> usize {
    rref(p, m, rows, cols).1
}

fn transpose(m: &SmallMat) -> SmallMat {
    let mut t = [[0u8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[j][i] = m[i][j];
        }
    }
    t
}

/// Kalman test: the columns of `B, AB, …, A^{n-1}B` span `F^n`.
pub fn kalman_reachable(p: u64, pair: &SmallPair) -> bool {
    let p = p as u8;
    let (n, m) = (pair.n, pair.m);
    let mut basis = [[0u8; 3]; 3];
    let mut found = 0;
    let mut block = pair.b;
    for _ in 0..n {
        for j in 0..m {
            if found == n {
                break;
            }
            let mut trial = basis;
            for i in 0..n {
                trial[i][found] = block[i][j];
            }
            if rank(p, &trial, n, found + 1) == found + 1 {
                basis = trial;
                found += 1;
            }
        }
        block = mul(p, &pair.a, &block, n, n, m);
    }
    found == n
}

/// Canonical column span of `B` mod p, padded to `m` columns.
fn canonical_inputs(p: u8, b: &SmallMat, n: usize, m: usize) -> SmallMat {
    transpose(&rref(p, &transpose(b), m, n).0)
}

/// Every `A` with every distinct input span, `B` canonical and padded.
pub fn enumerate_pairs(p: u64, n: usize, m: usize) -> Result<Vec<SmallPair>> {
    check_bounds(p, n, m)?;
    let q = p as u8;
    let spans: BTreeSet<SmallMat> = all_matrices(q, n, m)
        .iter()
        .map(|b| canonical_inputs(q, b, n, m))
        .collect();
    let mut out = Vec::new();
    for a in all_matrices(q, n, n) {
        for b in &spans {
            out.push(SmallPair { n, m, a, b: *b });
        }
    }
    Ok(out)
}

/// Searches `P ∈ GL_n`, `Q ∈ GL_m`, `K ∈ F^{m×n}` for
/// `A₂ = P(A₁ + B₁K)P⁻¹` and `B₂ = PB₁Q`.
pub struct OrbitSearcher {
    p: u8,
    n: usize,
    m: usize,
    gl_n: Vec<SmallMat>,
    gl_m: Vec<SmallMat>,
    feedbacks: Vec<SmallMat>,
}

impl OrbitSearcher {
    pub fn new(p: u64, n: usize, m: usize) -> Result<Self> {
        check_bounds(p, n, m)?;
        let q = p as u8;
        let invertible = |k: usize| -> Vec<SmallMat> {
            all_matrices(q, k, k)
                .into_iter()
                .filter(|x| rank(q, x, k, k) == k)
                .collect()
        };
        Ok(OrbitSearcher {
            p: q,
            n,
            m,
            gl_n: invertible(n),
            gl_m: invertible(m),
            feedbacks: all_matrices(q, m, n),
        })
    }

    /// `(|GL_n|, |F^{m×n}|, |GL_m|)`.
    pub fn group_sizes(&self) -> (usize, usize, usize) {
        (self.gl_n.len(), self.feedbacks.len(), self.gl_m.len())
    }

    pub fn equivalent(&self, x: &SmallPair, y: &SmallPair) -> bool {
        assert!(x.n == self.n && y.n == self.n && x.m == self.m && y.m == self.m);
        let (p, n, m) = (self.p, self.n, self.m);
        self.gl_n.par_iter().any(|pm| {
            let pb = mul(p, pm, &x.b, n, n, m);
            if !self.gl_m.iter().any(|qm| mul(p, &pb, qm, n, m, m) == y.b) {
                return false;
            }
            // A₂P = PA₁ + PB₁K.
            let rhs = sub(p, &mul(p, &y.a, pm, n, n, n), &mul(p, pm, &x.a, n, n, n));
            self.feedbacks
                .iter()
                .any(|k| mul(p, &pb, k, n, m, n) == rhs)
        })
    }
}

pub fn to_dyn(ring: &RingDescriptor, pair: &SmallPair) -> (DynMatrix, DynMatrix) {
    let a = Matrix::from_fn(pair.n, pair.n, |i, j| ring.from_i64(pair.a[i][j] as i64));
    let b = Matrix::from_fn(pair.n, pair.m, |i, j| ring.from_i64(pair.b[i][j] as i64));
    (a, b)
}

pub fn from_dyn(p: u64, a: &DynMatrix, b: &DynMatrix) -> Result<SmallPair> {
    let (n, m) = (a.rows(), b.cols());
    check_bounds(p, n, m)?;
    if !a.is_square() || b.rows() != n {
        return Err(Error::Shape("pair shapes do not match".into()));
    }
    let cell = |e: &RingElement| match e {
        RingElement::Residue(v) if *v < p => Ok(*v as u8),
        other => Err(Error::DescriptorMismatch {
            expected: format!("GF({p})"),
            found: format!("{other:?}"),
        }),
    };
    let mut pair = SmallPair {
        n,
        m,
        a: [[0; 3]; 3],
        b: [[0; 3]; 3],
    };
    for i in 0..n {
        for j in 0..n {
            pair.a[i][j] = cell(a.get(i, j))?;
        }
        for j in 0..m {
            pair.b[i][j] = cell(b.get(i, j))?;
        }
    }
    Ok(pair)
}

/// Outcome of comparing signature equality with orbit search.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub pairs: usize,
    pub reachable: usize,
    pub classes: usize,
    pub comparisons: usize,
    pub disagreements: Vec<String>,
    pub elapsed: Duration,
}

/// Groups the reachable pairs by signature, then checks each pair against
/// its class representative and every two representatives against each
/// other. With `all_pairs` every two reachable pairs are compared.
pub fn cross_check(p: u64, n: usize, m: usize, all_pairs: bool) -> Result<CrossCheck> {
    let start = Instant::now();
    let ring = RingDescriptor::prime_field(p)?;
    let searcher = OrbitSearcher::new(p, n, m)?;
    let pairs = enumerate_pairs(p, n, m)?;
    let mut disagreements = Vec::new();
    let mut systems = Vec::new();
    for pair in &pairs {
        let (a, b) = to_dyn(&ring, pair);
        let sys = LinearSystem::from_pair(ring.clone(), a, b)?;
        let library = z_signature(&sys).is_ok();
        if library != kalman_reachable(p, pair) {
            disagreements.push(format!("reachability differs for {pair:?}"));
        }
        if library {
            systems.push((*pair, sys));
        }
    }

    let mut classes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut class_of = Vec::with_capacity(systems.len());
    for (idx, (_, sys)) in systems.iter().enumerate() {
        let key = z_signature(sys)?.entries().to_vec();
        class_of.push(*classes.entry(key).or_insert(idx));
    }

    let mut jobs: Vec<(usize, usize)> = Vec::new();
    if all_pairs {
        for i in 0..systems.len() {
            for j in i..systems.len() {
                jobs.push((i, j));
            }
        }
    } else {
        let reps: Vec<usize> = classes.values().copied().collect();
        for (i, &rep) in class_of.iter().enumerate() {
            if i != rep {
                jobs.push((rep, i));
            }
        }
        for (x, &i) in reps.iter().enumerate() {
            for &j in &reps[x..] {
                jobs.push((i, j));
            }
        }
    }

    for &(i, j) in &jobs {
        let (pi, si) = &systems[i];
        let (pj, sj) = &systems[j];
        let by_signature = feedback_equivalent(si, sj)?;
        let by_search = searcher.equivalent(pi, pj);
        if by_signature != by_search {
            disagreements.push(format!(
                "signature says {by_signature}, search says {by_search}: {pi:?} vs {pj:?}"
            ));
        }
    }

    Ok(CrossCheck {
        p,
        n,
        m,
        pairs: pairs.len(),
        reachable: systems.len(),
        classes: classes.len(),
        comparisons: jobs.len(),
        disagreements,
        elapsed: start.elapsed(),
    })
}
