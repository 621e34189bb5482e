use super::{CommRing, Field, RingDescriptor, RingElement, TypedRing};
use crate::error::{Error, Result};

/// The prime field `GF(p)`. Residues are kept in `[0, p)`.
///
/// The modulus is limited to `p < 2^32` so products of two residues fit in
/// a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical residue of an arbitrary signed integer.
    pub fn residue(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl CommRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.residue(n)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn try_invert(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            // Fermat: a^(p-2) = a^-1.
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

impl Field for PrimeField {}

impl TypedRing for PrimeField {
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PrimeField(*self)
    }

    fn lower(&self, e: &RingElement) -> u64 {
        match e {
            RingElement::Residue(r) if *r < self.p => *r,
            other => panic!("expected a residue mod {}, found {other:?}", self.p),
        }
    }

    fn lift(&self, e: &u64) -> RingElement {
        RingElement::Residue(*e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_small_moduli() {
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn gf5_product() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&3, &4), 2);
    }

    #[test]
    fn inverses_in_gf7() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let b = f.try_invert(&a).unwrap();
            assert_eq!(f.mul(&a, &b), 1);
        }
        assert_eq!(f.try_invert(&0), None);
    }
}
