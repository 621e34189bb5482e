use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CommRing, Field, RingDescriptor, RingElement, TypedRing};

/// The field of rational numbers, with `BigRational` payloads.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl CommRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn try_invert(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        "Q".into()
    }
}

impl Field for Rationals {}

impl TypedRing for Rationals {
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Rationals
    }

    fn lower(&self, e: &RingElement) -> BigRational {
        match e {
            RingElement::Rational(q) => q.clone(),
            other => panic!("expected a rational element, found {other:?}"),
        }
    }

    fn lift(&self, e: &BigRational) -> RingElement {
        RingElement::Rational(e.clone())
    }
}
