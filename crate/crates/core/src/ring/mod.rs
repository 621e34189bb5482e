//! Exact commutative rings.
//!
//! Every algorithm in this crate is written against [`CommRing`], a ring
//! *context* object that owns whatever runtime data the ring needs (the
//! modulus of a prime field, the relation of a quotient ring) and performs
//! arithmetic on plain element values. Four concrete rings are provided,
//! plus [`RingDescriptor`], a tagged union over them used at the file and
//! CLI boundary.

mod dynamic;
mod integer;
mod poly;
mod prime_field;
mod rational;

use std::fmt::Debug;

pub use dynamic::{ArithOp, RingDescriptor, RingElement, RingKind};
pub use integer::Integers;
pub use poly::{Monomial, Polynomial, QuotientRing};
pub use prime_field::PrimeField;
pub use rational::Rationals;

/// A commutative ring with identity `1 != 0`.
pub trait CommRing: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Returns the inverse when the ring can certify `a` is a unit.
    ///
    /// Sound but not necessarily complete: `None` means no inverse was
    /// found, which for quotient rings does not prove `a` is a non-unit.
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    /// Short human-readable name, e.g. `Q` or `GF(5)`.
    fn name(&self) -> String;
}

/// Marker for rings in which every nonzero element is invertible.
pub trait Field: CommRing {
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        self.try_invert(a).expect("inverse of zero in a field")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// Conversion between a concrete ring's elements and the tagged
/// [`RingElement`] representation.
pub trait TypedRing: CommRing {
    fn descriptor(&self) -> RingDescriptor;
    /// Panics if `e` does not carry this ring's payload; callers validate
    /// membership through [`RingDescriptor::contains`] first.
    fn lower(&self, e: &RingElement) -> Self::Elem;
    fn lift(&self, e: &Self::Elem) -> RingElement;
}
