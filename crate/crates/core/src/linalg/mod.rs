//! Exact linear algebra and the submodule calculus used by the invariant
//! chain.
//!
//! Submodules of `R^n` are always carried as generator matrices (columns).
//! Over a field the canonical representative is the reduced column-echelon
//! basis; over the integers it is the column-transposed Hermite normal
//! form. In both cases equal submodules have equal canonical matrices.

pub mod det;
pub mod field;
pub mod integer;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{lift_matrix, lower_matrix, Matrix, MatrixRing};
use crate::ring::{
    CommRing, Integers, PrimeField, Rationals, RingDescriptor, RingElement, TypedRing,
};

pub use field::Rref;
pub use integer::SmithDecomposition;

/// A finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`
/// with `t_1 | t_2 | ... | t_k`, all `t_i > 1`. Over a field the torsion
/// list is always empty and `free_rank` is the dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Prime-power decomposition of the torsion part, sorted.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for t in &self.torsion {
            for (p, e) in factor(t) {
                out.push(num_traits::pow(p, e));
            }
        }
        out.sort();
        out
    }

    /// Structure of the direct sum, in invariant-factor form.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut by_prime: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
        for t in self.torsion.iter().chain(&other.torsion) {
            for (p, e) in factor(t) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let k = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![BigInt::one(); k];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // Largest exponents go to the last invariant factor.
            for (i, e) in exps.into_iter().enumerate() {
                factors[k - 1 - i] *= num_traits::pow(p.clone(), e);
            }
        }
        AbelianGroupStructure {
            free_rank: self.free_rank + other.free_rank,
            torsion: factors,
        }
    }
}

fn factor(n: &BigInt) -> Vec<(BigInt, usize)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("R^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Rings with decidable submodule arithmetic on free modules.
pub trait ModuleRing: CommRing {
    /// Canonical generators of the column span; equal spans give equal
    /// matrices. Columns are independent.
    fn canonical_span(&self, g: &Matrix<Self::Elem>) -> Matrix<Self::Elem>;

    /// Some `X` with `a * X == b`.
    fn solve_right(
        &self,
        a: &Matrix<Self::Elem>,
        b: &Matrix<Self::Elem>,
    ) -> Option<Matrix<Self::Elem>>;

    /// Columns generate the right kernel (a basis over fields, a lattice
    /// basis over the integers).
    fn kernel_basis(&self, m: &Matrix<Self::Elem>) -> Matrix<Self::Elem>;

    /// Structure of `R^ambient / col(g)`.
    fn cokernel_structure(&self, g: &Matrix<Self::Elem>, ambient: usize) -> AbelianGroupStructure;

    fn det(&self, m: &Matrix<Self::Elem>) -> Self::Elem;

    fn column_space_sum(
        &self,
        a: &Matrix<Self::Elem>,
        b: &Matrix<Self::Elem>,
    ) -> Matrix<Self::Elem> {
        self.canonical_span(&a.hstack(b).expect("column_space_sum: row counts differ"))
    }

    fn membership(&self, v: &Matrix<Self::Elem>, g: &Matrix<Self::Elem>) -> bool {
        self.solve_right(g, v).is_some()
    }

    /// `col(small) ⊆ col(big)`.
    fn span_contains(&self, big: &Matrix<Self::Elem>, small: &Matrix<Self::Elem>) -> bool {
        self.membership(small, big)
    }
}

macro_rules! field_module_ring {
    ($t:ty) => {
        impl ModuleRing for $t {
            fn canonical_span(&self, g: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
                field::canonical_span(self, g)
            }
            fn solve_right(
                &self,
                a: &Matrix<Self::Elem>,
                b: &Matrix<Self::Elem>,
            ) -> Option<Matrix<Self::Elem>> {
                field::solve_right(self, a, b)
            }
            fn kernel_basis(&self, m: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
                field::kernel_basis(self, m)
            }
            fn cokernel_structure(
                &self,
                g: &Matrix<Self::Elem>,
                ambient: usize,
            ) -> AbelianGroupStructure {
                AbelianGroupStructure::free(ambient - field::rank(self, g))
            }
            fn det(&self, m: &Matrix<Self::Elem>) -> Self::Elem {
                field::det(self, m)
            }
        }
    };
}

field_module_ring!(Rationals);
field_module_ring!(PrimeField);

impl ModuleRing for Integers {
    fn canonical_span(&self, g: &Matrix<BigInt>) -> Matrix<BigInt> {
        integer::canonical_span(g)
    }

    fn solve_right(&self, a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Option<Matrix<BigInt>> {
        integer::solve_right(a, b)
    }

    fn kernel_basis(&self, m: &Matrix<BigInt>) -> Matrix<BigInt> {
        integer::kernel_basis(m)
    }

    fn cokernel_structure(&self, g: &Matrix<BigInt>, ambient: usize) -> AbelianGroupStructure {
        integer::cokernel_structure(g, ambient)
    }

    fn det(&self, m: &Matrix<BigInt>) -> BigInt {
        integer::det(m)
    }
}

/// Runs `$body` with `$r` bound to the concrete ring behind a descriptor
/// that supports module calculus; quotient rings produce `Unsupported`.
macro_rules! with_module_ring {
    ($desc:expr, $op:expr, $r:ident => $body:expr) => {
        match $desc {
            RingDescriptor::Rationals => {
                let $r = &Rationals;
                Ok($body)
            }
            RingDescriptor::PrimeField(f) => {
                let $r = f;
                Ok($body)
            }
            RingDescriptor::Integers => {
                let $r = &Integers;
                Ok($body)
            }
            RingDescriptor::PolyQuotient(_) => Err(Error::Unsupported {
                op: $op,
                ring: $desc.name(),
            }),
        }
    };
}
pub(crate) use with_module_ring;

type DynMatrix = Matrix<RingElement>;

pub fn rref(ring: &RingDescriptor, m: &DynMatrix) -> Result<Rref<RingElement>> {
    match ring {
        RingDescriptor::Rationals => {
            let q = &Rationals;
            Ok(lift_rref(q, field::rref(q, &lower_matrix(q, m))))
        }
        RingDescriptor::PrimeField(f) => Ok(lift_rref(f, field::rref(f, &lower_matrix(f, m)))),
        _ => Err(Error::Unsupported {
            op: "rref",
            ring: ring.name(),
        }),
    }
}

fn lift_rref<R: TypedRing>(ring: &R, r: Rref<R::Elem>) -> Rref<RingElement> {
    Rref {
        reduced: lift_matrix(ring, &r.reduced),
        rank: r.rank,
        pivots: r.pivots,
        transform: lift_matrix(ring, &r.transform),
    }
}

pub fn solve_right(ring: &RingDescriptor, a: &DynMatrix, b: &DynMatrix) -> Result<DynMatrix> {
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "solve_right: {} rows vs {} rows",
            a.rows(),
            b.rows()
        )));
    }
    with_module_ring!(ring, "solve_right", r => {
        r.solve_right(&lower_matrix(r, a), &lower_matrix(r, b))
            .map(|x| lift_matrix(r, &x))
    })?
    .ok_or(Error::NoSolution)
}

pub fn kernel_basis(ring: &RingDescriptor, m: &DynMatrix) -> Result<DynMatrix> {
    with_module_ring!(ring, "kernel_basis", r => lift_matrix(r, &r.kernel_basis(&lower_matrix(r, m))))
}

pub fn column_space_sum(ring: &RingDescriptor, a: &DynMatrix, b: &DynMatrix) -> Result<DynMatrix> {
    let stacked = a.hstack(b)?;
    with_module_ring!(ring, "column_space_sum", r => lift_matrix(r, &r.canonical_span(&lower_matrix(r, &stacked))))
}

pub fn canonical_span(ring: &RingDescriptor, g: &DynMatrix) -> Result<DynMatrix> {
    with_module_ring!(ring, "canonical_span", r => lift_matrix(r, &r.canonical_span(&lower_matrix(r, g))))
}

pub fn membership(ring: &RingDescriptor, v: &DynMatrix, g: &DynMatrix) -> Result<bool> {
    if v.rows() != g.rows() {
        return Err(Error::Shape(
            "membership: vector and generators differ in length".into(),
        ));
    }
    with_module_ring!(ring, "membership", r => r.membership(&lower_matrix(r, v), &lower_matrix(r, g)))
}

pub fn cokernel_structure(
    ring: &RingDescriptor,
    g: &DynMatrix,
    ambient: usize,
) -> Result<AbelianGroupStructure> {
    if g.rows() != ambient {
        return Err(Error::Shape(
            "generators must have ambient_rank rows".into(),
        ));
    }
    with_module_ring!(ring, "cokernel_structure", r => r.cokernel_structure(&lower_matrix(r, g), ambient))
}

fn integer_matrix(
    ring: &RingDescriptor,
    m: &DynMatrix,
    op: &'static str,
) -> Result<Matrix<BigInt>> {
    match ring {
        RingDescriptor::Integers => Ok(lower_matrix(&Integers, m)),
        _ => Err(Error::Unsupported {
            op,
            ring: ring.name(),
        }),
    }
}

/// `(H, U)` with `U * M == H`.
pub fn hnf(ring: &RingDescriptor, m: &DynMatrix) -> Result<(DynMatrix, DynMatrix)> {
    let (h, u) = integer::hnf(&integer_matrix(ring, m, "hnf")?);
    Ok((lift_matrix(&Integers, &h), lift_matrix(&Integers, &u)))
}

pub fn snf(ring: &RingDescriptor, m: &DynMatrix) -> Result<SmithDecomposition> {
    Ok(integer::snf(&integer_matrix(ring, m, "snf")?))
}

/// Exact determinant in any supported ring. Quotient rings use the
/// division-free expansion.
pub fn det(ring: &RingDescriptor, m: &DynMatrix) -> Result<RingElement> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "det of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    match ring {
        RingDescriptor::PolyQuotient(q) => {
            Ok(q.lift(&det::det_division_free(q, &lower_matrix(q, m))))
        }
        _ => with_module_ring!(ring, "det", r => r.lift(&r.det(&lower_matrix(r, m)))),
    }
}

/// Zero-column matrix for an empty generator set.
pub fn empty_generators<R: MatrixRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    ring.zeros(n, 0)
}
