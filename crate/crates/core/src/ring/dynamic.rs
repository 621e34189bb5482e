use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CommRing, Integers, Polynomial, PrimeField, QuotientRing, Rationals, TypedRing};
use crate::error::{Error, Result};

/// Which of the four supported ring families a descriptor names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rationals,
    PrimeField,
    Integers,
    PolyQuotient,
}

/// A runtime choice of base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Rationals,
    PrimeField(PrimeField),
    Integers,
    PolyQuotient(QuotientRing),
}

/// A ring element tagged by family. The payload is always canonical:
/// reduced fractions, residues in `[0, p)`, reduced polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    Rational(BigRational),
    Residue(u64),
    Integer(BigInt),
    Poly(Polynomial),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl RingDescriptor {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(RingDescriptor::PrimeField(PrimeField::new(p)?))
    }

    pub fn kind(&self) -> RingKind {
        match self {
            RingDescriptor::Rationals => RingKind::Rationals,
            RingDescriptor::PrimeField(_) => RingKind::PrimeField,
            RingDescriptor::Integers => RingKind::Integers,
            RingDescriptor::PolyQuotient(_) => RingKind::PolyQuotient,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(
            self,
            RingDescriptor::Rationals | RingDescriptor::PrimeField(_)
        )
    }

    /// Rings on which submodule membership is decidable here.
    pub fn has_module_calculus(&self) -> bool {
        !matches!(self, RingDescriptor::PolyQuotient(_))
    }

    /// True when `e` is a canonical element of this ring.
    pub fn contains(&self, e: &RingElement) -> bool {
        match (self, e) {
            (RingDescriptor::Rationals, RingElement::Rational(_)) => true,
            (RingDescriptor::PrimeField(f), RingElement::Residue(r)) => *r < f.modulus(),
            (RingDescriptor::Integers, RingElement::Integer(_)) => true,
            (RingDescriptor::PolyQuotient(q), RingElement::Poly(p)) => q.is_reduced(p),
            _ => false,
        }
    }

    fn check(&self, e: &RingElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch {
                expected: self.name(),
                found: format!("{e:?}"),
            })
        }
    }

    /// Checked binary arithmetic.
    pub fn arith(&self, a: &RingElement, b: &RingElement, op: ArithOp) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        })
    }

    /// Checked inversion; `NotAUnit` when no inverse is certified.
    pub fn invert(&self, a: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.try_invert(a)
            .ok_or_else(|| Error::NotAUnit(self.format(a)))
    }

    /// Normal form of a polynomial in a quotient ring.
    pub fn reduce(&self, p: &Polynomial) -> Result<RingElement> {
        match self {
            RingDescriptor::PolyQuotient(q) if p.nvars() == q.nvars() => {
                Ok(RingElement::Poly(q.reduce(p)))
            }
            RingDescriptor::PolyQuotient(_) => Err(Error::DescriptorMismatch {
                expected: self.name(),
                found: format!("polynomial in {} variables", p.nvars()),
            }),
            _ => Err(Error::Unsupported {
                op: "reduce",
                ring: self.name(),
            }),
        }
    }

    /// Parses an element literal: `p/q` or `n` over Q, `k` over GF(p),
    /// `n` over Z, an expanded polynomial over a quotient ring.
    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        let t = text.trim();
        let bad = |msg: &str| Error::ElementParse {
            literal: text.to_string(),
            message: msg.to_string(),
        };
        match self {
            RingDescriptor::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (t, None),
                };
                let num = parse_int(num).ok_or_else(|| bad("not a rational literal"))?;
                let den = match den {
                    Some(d) => parse_unsigned(d).ok_or_else(|| bad("bad denominator"))?,
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(RingElement::Rational(BigRational::new(num, den)))
            }
            RingDescriptor::PrimeField(f) => {
                let n = parse_int(t).ok_or_else(|| bad("not an integer residue"))?;
                let p = BigInt::from(f.modulus());
                let r = ((n % &p) + &p) % &p;
                Ok(RingElement::Residue(
                    u64::try_from(r).expect("residue fits"),
                ))
            }
            RingDescriptor::Integers => Ok(RingElement::Integer(
                parse_int(t).ok_or_else(|| bad("not an integer"))?,
            )),
            RingDescriptor::PolyQuotient(q) => Ok(RingElement::Poly(q.parse_element(t)?)),
        }
    }
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    match s.strip_prefix('-') {
        Some(rest) => parse_unsigned(rest).map(|n| -n),
        None => parse_unsigned(s.strip_prefix('+').unwrap_or(s)),
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

macro_rules! dispatch {
    ($self:expr, $r:ident => $body:expr) => {
        match $self {
            RingDescriptor::Rationals => {
                let $r = &Rationals;
                $body
            }
            RingDescriptor::PrimeField(f) => {
                let $r = f;
                $body
            }
            RingDescriptor::Integers => {
                let $r = &Integers;
                $body
            }
            RingDescriptor::PolyQuotient(q) => {
                let $r = q;
                $body
            }
        }
    };
}

impl CommRing for RingDescriptor {
    type Elem = RingElement;

    fn zero(&self) -> RingElement {
        dispatch!(self, r => r.lift(&r.zero()))
    }

    fn one(&self) -> RingElement {
        dispatch!(self, r => r.lift(&r.one()))
    }

    fn from_i64(&self, n: i64) -> RingElement {
        dispatch!(self, r => r.lift(&r.from_i64(n)))
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        dispatch!(self, r => r.lift(&r.add(&r.lower(a), &r.lower(b))))
    }

    fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        dispatch!(self, r => r.lift(&r.sub(&r.lower(a), &r.lower(b))))
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        dispatch!(self, r => r.lift(&r.mul(&r.lower(a), &r.lower(b))))
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        dispatch!(self, r => r.lift(&r.neg(&r.lower(a))))
    }

    fn try_invert(&self, a: &RingElement) -> Option<RingElement> {
        dispatch!(self, r => r.try_invert(&r.lower(a)).map(|i| r.lift(&i)))
    }

    fn format(&self, a: &RingElement) -> String {
        dispatch!(self, r => r.format(&r.lower(a)))
    }

    fn name(&self) -> String {
        dispatch!(self, r => r.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        let q = RingDescriptor::Rationals;
        let a = q.parse_element("1/2").unwrap();
        let b = q.parse_element("1/3").unwrap();
        let c = q.arith(&a, &b, ArithOp::Add).unwrap();
        assert_eq!(q.format(&c), "5/6");
    }

    #[test]
    fn rational_literals_are_canonical() {
        let q = RingDescriptor::Rationals;
        assert!(q.parse_element("4/-2").is_err());
        assert_eq!(q.format(&q.parse_element("4/2").unwrap()), "2");
        assert_eq!(q.format(&q.parse_element("-4/6").unwrap()), "-2/3");
        assert!(q.parse_element("1/0").is_err());
        assert!(q.parse_element("x^2").is_err());
        assert!(q.parse_element("1.5").is_err());
    }

    #[test]
    fn gf5_product_and_negative_literal() {
        let f = RingDescriptor::prime_field(5).unwrap();
        let a = f.parse_element("3").unwrap();
        let b = f.parse_element("4").unwrap();
        assert_eq!(
            f.arith(&a, &b, ArithOp::Mul).unwrap(),
            RingElement::Residue(2)
        );
        assert_eq!(f.parse_element("-1").unwrap(), RingElement::Residue(4));
    }

    #[test]
    fn mismatched_descriptors_are_errors() {
        let q = RingDescriptor::Rationals;
        let z = RingDescriptor::Integers;
        let a = q.one();
        let b = z.one();
        assert!(matches!(
            q.arith(&a, &b, ArithOp::Add),
            Err(Error::DescriptorMismatch { .. })
        ));
        let f5 = RingDescriptor::prime_field(5).unwrap();
        assert!(f5
            .arith(&RingElement::Residue(7), &f5.one(), ArithOp::Mul)
            .is_err());
    }

    #[test]
    fn units() {
        let q = RingDescriptor::Rationals;
        let two_thirds = q.parse_element("2/3").unwrap();
        assert_eq!(q.format(&q.invert(&two_thirds).unwrap()), "3/2");
        let z = RingDescriptor::Integers;
        assert!(matches!(z.invert(&z.from_i64(2)), Err(Error::NotAUnit(_))));
        assert_eq!(z.invert(&z.from_i64(-1)).unwrap(), z.from_i64(-1));
        let s = RingDescriptor::PolyQuotient(QuotientRing::sphere());
        let x = s.parse_element("x").unwrap();
        assert!(matches!(s.invert(&x), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn sphere_sum_of_squares() {
        let s = RingDescriptor::PolyQuotient(QuotientRing::sphere());
        let e = |t: &str| s.parse_element(t).unwrap();
        let xx = s.arith(&e("x"), &e("x"), ArithOp::Mul).unwrap();
        let yy = s.arith(&e("y"), &e("y"), ArithOp::Mul).unwrap();
        let zz = s.arith(&e("z"), &e("z"), ArithOp::Mul).unwrap();
        let sum = s.add(&s.add(&xx, &yy), &zz);
        assert_eq!(sum, s.one());
        assert_eq!(s.format(&e("x^2 + y^2 + z^2")), "1");
    }

    #[test]
    fn reduce_requires_quotient_ring() {
        let p = Polynomial::zero(1);
        assert!(RingDescriptor::Rationals.reduce(&p).is_err());
    }
}
