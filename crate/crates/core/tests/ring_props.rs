mod common;

use std::collections::BTreeMap;

use fbk_core::linalg;
use fbk_core::ring::{ArithOp, Monomial};
use fbk_core::{CommRing, Error, Matrix, Polynomial, QuotientRing, RingDescriptor, RingElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_poly(nvars: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..rng.gen_range(0..=4) {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
        let c = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        p = p.add(&Polynomial::monomial(nvars, Monomial(exps), c));
    }
    p
}

fn sphere() -> RingDescriptor {
    RingDescriptor::PolyQuotient(QuotientRing::sphere())
}

fn element(ring: &RingDescriptor, rng: &mut ChaCha8Rng) -> RingElement {
    match ring {
        RingDescriptor::PolyQuotient(q) => ring.reduce(&random_poly(q.nvars(), rng)).unwrap(),
        _ => common::entry(ring, rng),
    }
}

fn rings() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::Rationals,
        RingDescriptor::prime_field(2).unwrap(),
        RingDescriptor::prime_field(7).unwrap(),
        RingDescriptor::prime_field(4_294_967_291).unwrap(),
        RingDescriptor::Integers,
        sphere(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn commutative_ring_axioms(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in rings() {
            let (a, b, c) = (element(&r, &mut rng), element(&r, &mut rng), element(&r, &mut rng));
            prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
            prop_assert_eq!(r.add(&a, &r.zero()), a.clone());
            prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
            prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
            prop_assert_eq!(r.sub(&a, &b), r.add(&a, &r.neg(&b)));
            prop_assert_eq!(r.arith(&a, &b, ArithOp::Mul).unwrap(), r.mul(&a, &b));
        }
    }

    #[test]
    fn inverses_are_exact(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in rings() {
            let a = element(&r, &mut rng);
            match r.try_invert(&a) {
                Some(inv) => prop_assert!(r.is_one(&r.mul(&a, &inv))),
                None => prop_assert_eq!(r.invert(&a), Err(Error::NotAUnit(r.format(&a)))),
            }
            if r.is_field() {
                prop_assert_eq!(r.try_invert(&a).is_some(), !r.is_zero(&a));
            }
        }
    }

    #[test]
    fn reduction_is_idempotent_and_multiplicative(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let q = QuotientRing::sphere();
        let (p, s) = (random_poly(3, &mut rng), random_poly(3, &mut rng));
        let rp = q.reduce(&p);
        prop_assert_eq!(q.reduce(&rp), rp.clone());
        prop_assert!(q.is_reduced(&rp));
        prop_assert_eq!(q.reduce(&p.mul(&s)), q.reduce(&rp.mul(&q.reduce(&s))));
        prop_assert_eq!(q.reduce(&p.add(&s)), q.reduce(&rp.add(&q.reduce(&s))));
    }
}

#[test]
fn integer_units_are_plus_minus_one() {
    let z = RingDescriptor::Integers;
    for n in -5i64..=5 {
        let ok = z.try_invert(&z.from_i64(n)).is_some();
        assert_eq!(ok, n == 1 || n == -1, "{n}");
    }
    let q = RingDescriptor::Rationals;
    let two_thirds = q.parse_element("2/3").unwrap();
    assert_eq!(q.format(&q.try_invert(&two_thirds).unwrap()), "3/2");
}

/// Writes `x·q` in reduced form for every reduced monomial `q` of degree
/// at most `bound`, and solves `x·q = c` by linear algebra over `Q` on the
/// coefficients.
fn solve_multiple(q: &QuotientRing, target: &Polynomial, factor: &Polynomial, bound: u32) -> bool {
    let n = q.nvars();
    let mut basis = Vec::new();
    let mut stack = vec![Monomial::one(n)];
    while let Some(m) = stack.pop() {
        if m.degree() > bound || basis.contains(&m) {
            continue;
        }
        let p = Polynomial::monomial(n, m.clone(), rat(1, 1));
        if q.is_reduced(&p) {
            basis.push(m.clone());
        }
        for i in 0..n {
            stack.push(m.mul(&Monomial::var(n, i)));
        }
    }
    let images: Vec<Polynomial> = basis
        .iter()
        .map(|m| q.reduce(&factor.mul(&Polynomial::monomial(n, m.clone(), rat(1, 1)))))
        .collect();
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in images.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let qr = RingDescriptor::Rationals;
    let mut a = Matrix::filled(rows.len(), images.len(), qr.zero());
    for (j, p) in images.iter().enumerate() {
        for (m, c) in p.terms() {
            a.set(rows[m], j, RingElement::Rational(c.clone()));
        }
    }
    let mut b = Matrix::filled(rows.len(), 1, qr.zero());
    for (m, c) in target.terms() {
        b.set(rows[m], 0, RingElement::Rational(c.clone()));
    }
    linalg::solve_right(&qr, &a, &b).is_ok()
}

#[test]
fn x_is_not_a_unit_on_the_sphere() {
    let q = QuotientRing::sphere();
    let one = Polynomial::constant(3, rat(1, 1));
    for bound in 0..=4 {
        assert!(
            !solve_multiple(&q, &one, &q.var("x").unwrap(), bound),
            "degree {bound}"
        );
        assert!(
            !solve_multiple(&q, &one, &q.var("z").unwrap(), bound),
            "degree {bound}"
        );
    }
    // Controls: 2 is a unit, and x divides x·y.
    assert!(solve_multiple(
        &q,
        &one,
        &Polynomial::constant(3, rat(2, 1)),
        0
    ));
    let xy = q.parse_element("x*y").unwrap();
    assert!(solve_multiple(&q, &xy, &q.var("x").unwrap(), 1));
    let r = sphere();
    assert!(matches!(
        r.invert(&r.parse_element("x").unwrap()),
        Err(Error::NotAUnit(_))
    ));
}

#[test]
fn sphere_reductions() {
    let r = sphere();
    let lit = |t: &str| r.parse_element(t).unwrap();
    let s = ["x^2", "y^2", "z^2"]
        .iter()
        .fold(r.zero(), |acc, t| r.add(&acc, &lit(t)));
    assert_eq!(s, r.one());
    assert_eq!(r.format(&lit("x*y")), "x*y");
    // With z leading, z²y loses its z² by one division step.
    let zyx = QuotientRing::parse(
        vec!["z".into(), "y".into(), "x".into()],
        "x^2 + y^2 + z^2 - 1",
    )
    .unwrap();
    let got = zyx.parse_element("z^2*y").unwrap();
    let want = zyx.parse_element("y - x^2*y - y^3").unwrap();
    assert_eq!(got, want);
}

#[test]
fn element_syntax_errors() {
    let r = sphere();
    for bad in ["x^", "x^-1", "w", "x**2", "2x^1.5", ""] {
        assert!(r.parse_element(bad).is_err(), "{bad:?}");
    }
    assert!(RingDescriptor::Rationals.parse_element("x^2").is_err());
    assert!(RingDescriptor::Integers.parse_element("1/2").is_err());
    let f = RingDescriptor::prime_field(5).unwrap();
    assert_eq!(f.parse_element("-1").unwrap(), RingElement::Residue(4));
}
