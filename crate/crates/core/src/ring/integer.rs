use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CommRing, RingDescriptor, RingElement, TypedRing};

/// The ring of integers. Units are exactly `1` and `-1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl CommRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn try_invert(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        "Z".into()
    }
}

impl TypedRing for Integers {
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn lower(&self, e: &RingElement) -> BigInt {
        match e {
            RingElement::Integer(n) => n.clone(),
            other => panic!("expected an integer element, found {other:?}"),
        }
    }

    fn lift(&self, e: &BigInt) -> RingElement {
        RingElement::Integer(e.clone())
    }
}
