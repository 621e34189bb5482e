//! The invariant chain `N_0 = 0 ⊆ N_1 ⊆ …` with `N_i = B + f(N_{i-1})`,
//! the derived modules `M_i = X/N_i`, `I_i = N_i/N_{i-1}` and
//! `Z_i = ker(I_i → I_{i+1})`, and Brunovsky data over fields.
//!
//! `I_i` and `Z_i` are computed from presentations. With `G_i` the
//! canonical basis of `N_i`, the relations of `I_i` are the coordinates
//! `C_i` of `G_{i-1}` in `G_i`. The map `I_i → I_{i+1}` is induced by the
//! coordinates `F_i` of `f·G_i` in `G_{i+1}`; its kernel is the lattice of
//! `x` with `F_i x ∈ col(C_{i+1})`, taken modulo `col(C_i)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{AbelianGroupStructure, ModuleRing};
use crate::matrix::{lift_matrix, lower_matrix, Matrix, MatrixRing};
use crate::ring::{CommRing, Field, Integers, PrimeField, Rationals, RingDescriptor, TypedRing};
use crate::system::{DynMatrix, LinearSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub ring: RingDescriptor,
    pub state_rank: usize,
    /// Canonical generators of `N_0, …, N_s`.
    pub chain: Vec<DynMatrix>,
    /// Stabilization index: `N_{s+1} = N_s`.
    pub s: usize,
    /// `M_1, …, M_s`.
    pub m: Vec<AbelianGroupStructure>,
    /// `I_1, …, I_s`.
    pub i: Vec<AbelianGroupStructure>,
    /// `Z_1, …, Z_s`.
    pub z: Vec<AbelianGroupStructure>,
    pub reachable: bool,
    pub locally_brunovsky: bool,
}

impl InvariantReport {
    /// Ranks of `N_0, …, N_s`.
    pub fn chain_ranks(&self) -> Vec<usize> {
        self.chain.iter().map(Matrix::cols).collect()
    }

    pub fn z_signature(&self) -> Option<ZSignature> {
        self.locally_brunovsky
            .then(|| ZSignature::new(self.z.iter().map(|g| g.free_rank).collect()))
    }
}

/// Ranks of the `Z_i`, trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZSignature {
    entries: Vec<usize>,
}

impl ZSignature {
    pub fn new(mut entries: Vec<usize>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        ZSignature { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `z_i`, one-based; zero past the support.
    pub fn get(&self, i: usize) -> usize {
        assert!(i >= 1, "signature positions start at 1");
        self.entries.get(i - 1).copied().unwrap_or(0)
    }

    /// Brunovsky indices: `z_i` blocks of size `i`, largest first.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (pos, &count) in self.entries.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(pos + 1, count));
        }
        out
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let len = indices.iter().copied().max().unwrap_or(0);
        let mut entries = vec![0; len];
        for &k in indices {
            entries[k - 1] += 1;
        }
        ZSignature::new(entries)
    }
}

impl fmt::Display for ZSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Canonical generators of `N_0, …, N_s` over a ring with module calculus.
fn build_chain<R: ModuleRing>(
    r: &R,
    f: &Matrix<R::Elem>,
    gb: &Matrix<R::Elem>,
) -> Vec<Matrix<R::Elem>> {
    let n = f.rows();
    let mut chain = vec![r.zeros(n, 0)];
    loop {
        let prev = chain.last().expect("chain starts non-empty");
        let next = r.column_space_sum(gb, &r.mat_mul(f, prev));
        if &next == prev {
            return chain;
        }
        chain.push(next);
    }
}

fn chain_report<R: ModuleRing + TypedRing>(r: &R, sys: &LinearSystem) -> InvariantReport {
    let f = lower_matrix(r, sys.endo());
    let gb = r.canonical_span(&lower_matrix(r, sys.input_gens()));
    let n = f.rows();
    let chain = build_chain(r, &f, &gb);
    let s = chain.len() - 1;
    let g = |k: usize| &chain[k.min(s)];
    // Coordinates of G_{k-1} in G_k; for k = s + 1 this is the identity.
    let rel = |k: usize| r.solve_right(g(k), g(k - 1)).expect("chain is increasing");

    let (mut ms, mut is, mut zs) = (Vec::new(), Vec::new(), Vec::new());
    for k in 1..=s {
        let rk = chain[k].cols();
        let ck = rel(k);
        ms.push(r.cokernel_structure(&chain[k], n));
        is.push(r.cokernel_structure(&ck, rk));

        let fk = r
            .solve_right(g(k + 1), &r.mat_mul(&f, g(k)))
            .expect("f(N_k) lies in N_{k+1}");
        let joined = fk.hstack(&r.mat_neg(&rel(k + 1))).expect("same row count");
        let ker = r.kernel_basis(&joined);
        let preimage = r.canonical_span(&ker.select_rows(&(0..rk).collect::<Vec<_>>()));
        let d = r
            .solve_right(&preimage, &ck)
            .expect("N_{k-1} lies in the kernel preimage");
        zs.push(r.cokernel_structure(&d, preimage.cols()));
    }

    let reachable = chain[s] == r.canonical_span(&r.identity(n));
    let locally_brunovsky = reachable
        && ms
            .iter()
            .chain(&is)
            .chain(&zs)
            .all(AbelianGroupStructure::is_free);
    InvariantReport {
        ring: sys.ring().clone(),
        state_rank: n,
        chain: chain.iter().map(|c| lift_matrix(r, c)).collect(),
        s,
        m: ms,
        i: is,
        z: zs,
        reachable,
        locally_brunovsky,
    }
}

pub fn compute_chain(sys: &LinearSystem) -> Result<InvariantReport> {
    match sys.ring() {
        RingDescriptor::Rationals => Ok(chain_report(&Rationals, sys)),
        RingDescriptor::PrimeField(p) => Ok(chain_report(p, sys)),
        RingDescriptor::Integers => Ok(chain_report(&Integers, sys)),
        other => Err(Error::Unsupported {
            op: "compute_chain",
            ring: other.name(),
        }),
    }
}

pub fn z_signature(sys: &LinearSystem) -> Result<ZSignature> {
    compute_chain(sys)?
        .z_signature()
        .ok_or(Error::NotLocallyBrunovsky)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrunovskyData {
    /// Non-increasing, summing to the state rank.
    pub indices: Vec<usize>,
    pub a_c: DynMatrix,
    /// One column per index.
    pub b_c: DynMatrix,
}

/// Shift blocks `e_{j,t} ↦ e_{j,t+1}` of sizes `indices`, with the first
/// vector of each block as an input column. `inputs` pads `B_c` with
/// zero columns.
pub fn canonical_pair<R: MatrixRing>(
    ring: &R,
    indices: &[usize],
    inputs: usize,
) -> (Matrix<R::Elem>, Matrix<R::Elem>) {
    assert!(inputs >= indices.len(), "fewer inputs than blocks");
    let n: usize = indices.iter().sum();
    let mut a = ring.zeros(n, n);
    let mut b = ring.zeros(n, inputs);
    let mut start = 0;
    for (j, &k) in indices.iter().enumerate() {
        b.set(start, j, ring.one());
        for t in 0..k.saturating_sub(1) {
            a.set(start + t + 1, start + t, ring.one());
        }
        start += k;
    }
    (a, b)
}

fn indices_from_layers(dims: &[usize]) -> Vec<usize> {
    let width = dims.first().copied().unwrap_or(0);
    (1..=width)
        .map(|j| dims.iter().filter(|&&d| d >= j).count())
        .collect()
}

pub fn brunovsky(sys: &LinearSystem) -> Result<BrunovskyData> {
    if !sys.ring().is_field() {
        return Err(Error::Unsupported {
            op: "brunovsky",
            ring: sys.ring().name(),
        });
    }
    let report = compute_chain(sys)?;
    if !report.reachable {
        return Err(Error::NotReachable);
    }
    let dims: Vec<usize> = report.i.iter().map(|g| g.free_rank).collect();
    let indices = indices_from_layers(&dims);
    let (a_c, b_c) = canonical_pair(sys.ring(), &indices, indices.len());
    Ok(BrunovskyData { indices, a_c, b_c })
}

/// `(P, K, Q)` with `A_c = P(A + BK)P⁻¹` and `B_c = PBQ`, where `B_c` is
/// padded with zero columns to the input count of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCertificate {
    pub indices: Vec<usize>,
    pub p: DynMatrix,
    pub k: DynMatrix,
    pub q: DynMatrix,
    pub a_c: DynMatrix,
    pub b_c: DynMatrix,
}

type Cert<E> = (Vec<usize>, Matrix<E>, Matrix<E>, Matrix<E>);

fn certificate_in<F: Field + ModuleRing>(
    r: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<Cert<F::Elem>> {
    let n = a.rows();
    let gb = r.canonical_span(b);
    let chain = build_chain(r, a, &gb);
    let s = chain.len() - 1;
    if chain[s].cols() != n {
        return Err(Error::NotReachable);
    }

    // Each chain is stored from its top level down to level 1.
    let mut chains: Vec<Vec<Matrix<F::Elem>>> = Vec::new();
    for k in (1..=s).rev() {
        let gk = &chain[k];
        let agk = r.mat_mul(a, gk);
        let back = agk.hstack(&gb).expect("same rows");
        let keep: Vec<usize> = (0..gk.cols()).collect();
        for ch in chains.iter_mut() {
            let upper = ch.last().expect("chains are non-empty");
            let sol = r.solve_right(&back, upper).expect("N_{k+1} = B + A N_k");
            ch.push(r.mat_mul(gk, &sol.select_rows(&keep)));
        }

        let mut span = chain[k - 1].clone();
        for ch in &chains {
            span = span
                .hstack(ch.last().expect("non-empty"))
                .expect("same rows");
        }
        let ends = r.kernel_basis(&agk.hstack(&r.mat_neg(&gb)).expect("same rows"));
        let candidates = r.mat_mul(gk, &ends.select_rows(&keep));
        for j in 0..candidates.cols() {
            let v = candidates.column_matrix(j);
            if !r.membership(&v, &span) {
                span = span.hstack(&v).expect("same rows");
                chains.push(vec![v]);
            }
        }
    }

    let indices: Vec<usize> = chains.iter().map(Vec::len).collect();
    let mut basis = Vec::with_capacity(n);
    let mut feedback = Vec::with_capacity(n);
    for ch in &chains {
        // ch[len-1] is level 1.
        let levels: Vec<&Matrix<F::Elem>> = ch.iter().rev().collect();
        for (t, v) in levels.iter().enumerate() {
            let target = match levels.get(t + 1) {
                Some(next) => r.mat_sub(next, &r.mat_mul(a, v)),
                None => r.mat_neg(&r.mat_mul(a, v)),
            };
            let u = r.solve_right(b, &target).expect("difference lies in B");
            basis.push((*v).clone());
            feedback.push(u);
        }
    }
    let v = hcat(r, &basis, n);
    let p = crate::linalg::field::inverse(r, &v).expect("chain vectors form a basis");
    let k = r.mat_mul(&hcat(r, &feedback, b.cols()), &p);

    let mut q_cols = Vec::new();
    for ch in &chains {
        let entry = ch.last().expect("non-empty");
        q_cols.push(r.solve_right(b, entry).expect("level-1 vectors lie in B"));
    }
    let ker = r.kernel_basis(b);
    for j in 0..ker.cols() {
        q_cols.push(ker.column_matrix(j));
    }
    let q = hcat(r, &q_cols, b.cols());

    let (a_c, b_c) = canonical_pair(r, &indices, b.cols());
    let closed = r.mat_add(a, &r.mat_mul(b, &k));
    assert_eq!(
        r.mat_mul(&r.mat_mul(&p, &closed), &v),
        a_c,
        "feedback identity"
    );
    assert_eq!(r.mat_mul(&r.mat_mul(&p, b), &q), b_c, "input identity");
    Ok((indices, p, k, q))
}

fn hcat<R: MatrixRing>(r: &R, cols: &[Matrix<R::Elem>], rows: usize) -> Matrix<R::Elem> {
    cols.iter()
        .fold(r.zeros(rows, 0), |acc, c| acc.hstack(c).expect("same rows"))
}

fn canonical_in<F: Field + ModuleRing + TypedRing>(
    r: &F,
    ring: &RingDescriptor,
    a: &DynMatrix,
    b: &DynMatrix,
) -> Result<CanonicalCertificate> {
    let (indices, p, k, q) = certificate_in(r, &lower_matrix(r, a), &lower_matrix(r, b))?;
    let (a_c, b_c) = canonical_pair(ring, &indices, b.cols());
    Ok(CanonicalCertificate {
        indices,
        p: lift_matrix(r, &p),
        k: lift_matrix(r, &k),
        q: lift_matrix(r, &q),
        a_c,
        b_c,
    })
}

/// Brunovsky certificate for the pair `(A, B)` over a field.
pub fn canonical_certificate(
    ring: &RingDescriptor,
    a: &DynMatrix,
    b: &DynMatrix,
) -> Result<CanonicalCertificate> {
    // Validates shapes and entries.
    LinearSystem::from_pair(ring.clone(), a.clone(), b.clone())?;
    match ring {
        RingDescriptor::Rationals => canonical_in(&Rationals, ring, a, b),
        RingDescriptor::PrimeField(p) => canonical_in::<PrimeField>(p, ring, a, b),
        other => Err(Error::Unsupported {
            op: "canonical_certificate",
            ring: other.name(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sys(ring: &RingDescriptor, a: &[&[i64]], b: &[&[i64]]) -> LinearSystem {
        LinearSystem::from_pair(ring.clone(), ring.mat_from_i64(a), ring.mat_from_i64(b)).unwrap()
    }

    fn shift() -> LinearSystem {
        sys(
            &RingDescriptor::Rationals,
            &[&[0, 0], &[1, 0]],
            &[&[1], &[0]],
        )
    }

    #[test]
    fn gamma_report() {
        for p in 0..4 {
            let r = compute_chain(&LinearSystem::gamma(RingDescriptor::Rationals, p)).unwrap();
            assert!(r.reachable && r.locally_brunovsky);
            if p == 0 {
                assert_eq!(r.s, 0);
                assert_eq!(r.z_signature().unwrap(), ZSignature::default());
            } else {
                assert_eq!(r.s, 1);
                assert_eq!(r.i, vec![AbelianGroupStructure::free(p)]);
                assert_eq!(r.z_signature().unwrap().entries(), &[p]);
            }
        }
    }

    #[test]
    fn single_shift_chain() {
        let r = compute_chain(&shift()).unwrap();
        assert_eq!(r.chain_ranks(), vec![0, 1, 2]);
        assert_eq!(r.z_signature().unwrap().entries(), &[0, 1]);
        assert_eq!(
            r.m,
            vec![
                AbelianGroupStructure::free(1),
                AbelianGroupStructure::free(0)
            ]
        );
    }

    #[test]
    fn integer_torsion_blocks_reachability() {
        let s = sys(&RingDescriptor::Integers, &[&[0]], &[&[2]]);
        let r = compute_chain(&s).unwrap();
        assert!(!r.reachable);
        assert!(!r.locally_brunovsky);
        assert_eq!(r.m[0].torsion, vec![BigInt::from(2)]);
        assert_eq!(z_signature(&s), Err(Error::NotLocallyBrunovsky));
    }

    #[test]
    fn integer_rank_stable_but_lattice_grows() {
        // f = 2 on Z^2 shifted: N_1 = <e1>, N_2 = <e1, 2 e2>, not Z^2.
        let s = sys(
            &RingDescriptor::Integers,
            &[&[0, 0], &[2, 0]],
            &[&[1], &[0]],
        );
        let r = compute_chain(&s).unwrap();
        assert_eq!(r.chain_ranks(), vec![0, 1, 2]);
        assert!(!r.reachable);
        assert_eq!(r.m[1].torsion, vec![BigInt::from(2)]);
        assert_eq!(r.i[1], AbelianGroupStructure::free(1));
        assert!(!r.locally_brunovsky);
    }

    #[test]
    fn signature_of_two_one_pair() {
        let q = RingDescriptor::Rationals;
        let (a, b) = canonical_pair(&q, &[2, 1], 2);
        let s = LinearSystem::from_pair(q, a, b).unwrap();
        assert_eq!(z_signature(&s).unwrap().entries(), &[1, 1]);
        let bigger = s
            .direct_sum(&LinearSystem::gamma(RingDescriptor::Rationals, 1))
            .unwrap();
        assert_eq!(z_signature(&bigger).unwrap().entries(), &[2, 1]);
    }

    #[test]
    fn signature_indices_round_trip() {
        let z = ZSignature::from_indices(&[2, 2, 1]);
        assert_eq!(z.entries(), &[1, 2]);
        assert_eq!(z.indices(), vec![2, 2, 1]);
        assert_eq!(z.get(5), 0);
        assert_eq!(z.to_string(), "(1, 2)");
        assert_eq!(ZSignature::new(vec![1, 0, 0]).entries(), &[1]);
    }

    #[test]
    fn brunovsky_examples() {
        let d = brunovsky(&shift()).unwrap();
        assert_eq!(d.indices, vec![2]);
        let q = RingDescriptor::Rationals;
        assert_eq!(d.a_c, q.mat_from_i64(&[&[0, 0], &[1, 0]]));
        assert_eq!(d.b_c, q.mat_from_i64(&[&[1], &[0]]));
        assert_eq!(
            brunovsky(&LinearSystem::gamma(q.clone(), 3))
                .unwrap()
                .indices,
            vec![1, 1, 1]
        );
        let stuck = sys(
            &q,
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[1, 0], &[0, 1], &[0, 0]],
        );
        assert_eq!(brunovsky(&stuck), Err(Error::NotReachable));
    }

    #[test]
    fn certificate_for_canonical_pair() {
        let q = RingDescriptor::Rationals;
        let (a, b) = canonical_pair(&q, &[3, 1], 2);
        let c = canonical_certificate(&q, &a, &b).unwrap();
        assert_eq!(c.indices, vec![3, 1]);
        assert_eq!(c.a_c, a);
        assert_eq!(c.b_c, b);
    }

    #[test]
    fn scaled_input_needs_half() {
        let q = RingDescriptor::Rationals;
        let a = q.mat_from_i64(&[&[0, 0], &[1, 0]]);
        let b = q.mat_from_i64(&[&[2], &[0]]);
        let c = canonical_certificate(&q, &a, &b).unwrap();
        let half = q.parse_element("1/2").unwrap();
        assert_eq!(*c.q.get(0, 0), half);
    }

    #[test]
    fn certificate_with_redundant_inputs() {
        let f = RingDescriptor::prime_field(3).unwrap();
        let a = f.mat_from_i64(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 0]]);
        let b = f.mat_from_i64(&[&[1, 2], &[0, 0], &[1, 2]]);
        let c = canonical_certificate(&f, &a, &b).unwrap();
        assert_eq!(c.indices.iter().sum::<usize>(), 3);
        assert_eq!(c.b_c.cols(), 2);
        let closed = f.mat_add(&a, &f.mat_mul(&b, &c.k));
        let pinv = crate::linalg::solve_right(&f, &c.p, &f.identity(3)).unwrap();
        assert_eq!(f.mat_mul(&f.mat_mul(&c.p, &closed), &pinv), c.a_c);
        assert_eq!(f.mat_mul(&f.mat_mul(&c.p, &b), &c.q), c.b_c);
    }

    #[test]
    fn quotient_rings_unsupported() {
        let r = RingDescriptor::PolyQuotient(crate::ring::QuotientRing::sphere());
        let s = LinearSystem::gamma(r.clone(), 1);
        assert!(matches!(compute_chain(&s), Err(Error::Unsupported { .. })));
        assert!(matches!(brunovsky(&s), Err(Error::Unsupported { .. })));
    }
}
