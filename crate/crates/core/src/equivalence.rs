//! Feedback, dynamic and stable equivalence, K₀ classes, and checking of
//! isomorphism certificates by ring arithmetic alone.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::invariants::z_signature;
use crate::linalg;
use crate::matrix::MatrixRing;
use crate::oracle::{self, OrbitSearcher};
use crate::ring::{CommRing, RingDescriptor};
use crate::system::{DynMatrix, LinearSystem};

fn same_ring(a: &LinearSystem, b: &LinearSystem) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().name(), b.ring().name()));
    }
    Ok(())
}

/// Over fields and the integers projectives are free, so isomorphism of
/// the `Z_i` is rank equality.
pub fn feedback_equivalent(a: &LinearSystem, b: &LinearSystem) -> Result<bool> {
    same_ring(a, b)?;
    Ok(z_signature(a)? == z_signature(b)?)
}

/// Tries `Γ(p) ⊕ Σ₁` against `Γ(p) ⊕ Σ₂` for `p = 0..=p_max`.
pub fn dynamic_equivalent(a: &LinearSystem, b: &LinearSystem, p_max: usize) -> Result<bool> {
    same_ring(a, b)?;
    for p in 0..=p_max {
        if feedback_equivalent(&a.dynamic_enlarge(p), &b.dynamic_enlarge(p))? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn stable_equivalent(a: &LinearSystem, b: &LinearSystem) -> Result<bool> {
    same_ring(a, b)?;
    Ok(k0_class(a)? == k0_class(b)?)
}

/// A finitely supported integer sequence, trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct K0Class {
    entries: Vec<i64>,
}

impl K0Class {
    pub fn new(mut entries: Vec<i64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        K0Class { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    fn zip_with(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        let len = self.entries.len().max(other.entries.len());
        let at = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
        K0Class::new(
            (0..len)
                .map(|i| op(at(&self.entries, i), at(&other.entries, i)))
                .collect(),
        )
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, rhs: &K0Class) -> K0Class {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, rhs: &K0Class) -> K0Class {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class::new(self.entries.iter().map(|v| -v).collect())
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn k0_class(sys: &LinearSystem) -> Result<K0Class> {
    let sig = z_signature(sys)?;
    Ok(K0Class::new(
        sig.entries().iter().map(|&r| r as i64).collect(),
    ))
}

/// Witnesses for `φ: Σ₁ → Σ₂` being a feedback isomorphism:
/// `φψ = I`, `ψφ = I`, `φG₁ = G₂U`, `G₂ = φG₁V`, `f₂φ − φf₁ = G₂Kw`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub phi: DynMatrix,
    pub psi: DynMatrix,
    pub u: DynMatrix,
    pub v: DynMatrix,
    pub kw: DynMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    Inverse,
    UIdentity,
    VIdentity,
    KwIdentity,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::Inverse => "inverse identity",
            RejectReason::UIdentity => "U identity",
            RejectReason::VIdentity => "V identity",
            RejectReason::KwIdentity => "Kw identity",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("Accept"),
            Verdict::Reject(r) => write!(f, "Reject({r})"),
        }
    }
}

fn expect_shape(name: &str, m: &DynMatrix, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Shape(format!(
            "{name} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn expect_ring(ring: &RingDescriptor, name: &str, m: &DynMatrix) -> Result<()> {
    match m.entries().iter().find(|e| !ring.contains(e)) {
        Some(e) => Err(Error::DescriptorMismatch {
            expected: ring.name(),
            found: format!("{name} entry {e:?}"),
        }),
        None => Ok(()),
    }
}

impl IsoCertificate {
    pub fn identity(sys: &LinearSystem) -> Self {
        let r = sys.ring();
        let (n, m) = (sys.state_rank(), sys.input_count());
        IsoCertificate {
            phi: r.identity(n),
            psi: r.identity(n),
            u: r.identity(m),
            v: r.identity(m),
            kw: r.zeros(m, n),
        }
    }

    /// Certificate for `φ ⊕ φ'` between the direct sums.
    pub fn direct_sum(&self, ring: &RingDescriptor, other: &IsoCertificate) -> IsoCertificate {
        IsoCertificate {
            phi: ring.block_diag(&self.phi, &other.phi),
            psi: ring.block_diag(&self.psi, &other.psi),
            u: ring.block_diag(&self.u, &other.u),
            v: ring.block_diag(&self.v, &other.v),
            kw: ring.block_diag(&self.kw, &other.kw),
        }
    }

    /// Certificate between `Γ(p) ⊕ Σ₁` and `Γ(p) ⊕ Σ₂`.
    pub fn enlarge(&self, ring: &RingDescriptor, p: usize) -> IsoCertificate {
        IsoCertificate::identity(&LinearSystem::gamma(ring.clone(), p)).direct_sum(ring, self)
    }

    /// Solves for `U`, `V`, `Kw` given `φ` and `ψ`. Needs a ring with
    /// module calculus.
    pub fn solve(
        source: &LinearSystem,
        target: &LinearSystem,
        phi: DynMatrix,
        psi: DynMatrix,
    ) -> Result<IsoCertificate> {
        same_ring(source, target)?;
        let r = source.ring();
        let (g1, g2) = (source.input_gens(), target.input_gens());
        let image = r.try_mat_mul(&phi, g1)?;
        let u = linalg::solve_right(r, g2, &image)?;
        let v = linalg::solve_right(r, &image, g2)?;
        let defect = r.mat_sub(
            &r.try_mat_mul(target.endo(), &phi)?,
            &r.try_mat_mul(&phi, source.endo())?,
        );
        let kw = linalg::solve_right(r, g2, &defect)?;
        Ok(IsoCertificate { phi, psi, u, v, kw })
    }
}

/// Checks the certificate identities in order: inverse, `U`, `V`, `Kw`.
pub fn verify_certificate(
    source: &LinearSystem,
    target: &LinearSystem,
    cert: &IsoCertificate,
) -> Result<Verdict> {
    same_ring(source, target)?;
    let r = source.ring();
    let (n1, n2) = (source.state_rank(), target.state_rank());
    let (m1, m2) = (source.input_count(), target.input_count());
    expect_shape("phi", &cert.phi, n2, n1)?;
    expect_shape("psi", &cert.psi, n1, n2)?;
    expect_shape("U", &cert.u, m2, m1)?;
    expect_shape("V", &cert.v, m1, m2)?;
    expect_shape("Kw", &cert.kw, m2, n1)?;
    for (name, m) in [
        ("phi", &cert.phi),
        ("psi", &cert.psi),
        ("U", &cert.u),
        ("V", &cert.v),
        ("Kw", &cert.kw),
    ] {
        expect_ring(r, name, m)?;
    }

    let (g1, g2) = (source.input_gens(), target.input_gens());
    if r.mat_mul(&cert.phi, &cert.psi) != r.identity(n2)
        || r.mat_mul(&cert.psi, &cert.phi) != r.identity(n1)
    {
        return Ok(Verdict::Reject(RejectReason::Inverse));
    }
    let image = r.mat_mul(&cert.phi, g1);
    if image != r.mat_mul(g2, &cert.u) {
        return Ok(Verdict::Reject(RejectReason::UIdentity));
    }
    if *g2 != r.mat_mul(&image, &cert.v) {
        return Ok(Verdict::Reject(RejectReason::VIdentity));
    }
    let defect = r.mat_sub(
        &r.mat_mul(target.endo(), &cert.phi),
        &r.mat_mul(&cert.phi, source.endo()),
    );
    if defect != r.mat_mul(g2, &cert.kw) {
        return Ok(Verdict::Reject(RejectReason::KwIdentity));
    }
    Ok(Verdict::Accept)
}

/// Applies `(P, K, Q)` to `(A, B)`: returns `(P(A + BK)P⁻¹, PBQ)`.
pub fn feedback_action(
    ring: &RingDescriptor,
    a: &DynMatrix,
    b: &DynMatrix,
    p: &DynMatrix,
    k: &DynMatrix,
    q: &DynMatrix,
) -> Result<(DynMatrix, DynMatrix)> {
    let p_inv = linalg::solve_right(ring, p, &ring.identity(p.rows()))
        .map_err(|_| Error::NotAUnit("P".into()))?;
    if ring.try_mat_mul(&p_inv, p)? != ring.identity(p.rows()) {
        return Err(Error::NotAUnit("P".into()));
    }
    let closed = ring.mat_add(a, &ring.try_mat_mul(b, k)?);
    let a2 = ring.mat_mul(&ring.try_mat_mul(p, &closed)?, &p_inv);
    let b2 = ring.try_mat_mul(&ring.try_mat_mul(p, b)?, q)?;
    Ok((a2, b2))
}

/// Exhaustive `(P, K, Q)` search over GF(2) or GF(3), `n ≤ 3`, `m ≤ 2`.
pub fn feedback_equivalent_pairs_bruteforce(
    ring: &RingDescriptor,
    a1: &DynMatrix,
    b1: &DynMatrix,
    a2: &DynMatrix,
    b2: &DynMatrix,
) -> Result<bool> {
    let p = match ring {
        RingDescriptor::PrimeField(f) => f.modulus(),
        other => {
            return Err(Error::Unsupported {
                op: "orbit search",
                ring: other.name(),
            })
        }
    };
    if a1.shape() != a2.shape() || b1.shape() != b2.shape() {
        return Err(Error::Shape("pairs must have equal shapes".into()));
    }
    let x = oracle::from_dyn(p, a1, b1)?;
    let y = oracle::from_dyn(p, a2, b2)?;
    Ok(OrbitSearcher::new(p, x.n, x.m)?.equivalent(&x, &y))
}
