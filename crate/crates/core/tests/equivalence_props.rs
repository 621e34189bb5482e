mod common;

use fbk_core::equivalence::feedback_action;
use fbk_core::oracle::cross_check;
use fbk_core::{
    canonical_pair, dynamic_equivalent, feedback_equivalent, feedback_equivalent_pairs_bruteforce,
    is_morphism, k0_class, stable_equivalent, verify_certificate, CommRing, IsoCertificate,
    K0Class, LinearSystem, MatrixRing, RingDescriptor,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random partition of a number in `0..=max_n`, non-increasing.
fn partition(max_n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut left = rng.gen_range(0..=max_n);
    let mut parts = Vec::new();
    while left > 0 {
        let cap = parts.last().copied().unwrap_or(left).min(left);
        let k = rng.gen_range(1..=cap);
        parts.push(k);
        left -= k;
    }
    parts
}

/// A feedback-disguised canonical system with the given indices.
fn disguised(r: &RingDescriptor, indices: &[usize], rng: &mut ChaCha8Rng) -> LinearSystem {
    let m = indices.len() + rng.gen_range(0..=1);
    let (a, b) = canonical_pair(r, indices, m);
    let n = a.rows();
    let p = common::invertible(r, n, rng);
    let k = common::matrix(r, m, n, rng);
    let q = common::invertible(r, m, rng);
    let (a2, b2) = feedback_action(r, &a, &b, &p, &k, &q).unwrap();
    LinearSystem::from_pair(r.clone(), a2, b2).unwrap()
}

fn rings() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::Rationals,
        RingDescriptor::prime_field(2).unwrap(),
        RingDescriptor::Integers,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn direct_summands_cancel(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in rings() {
            let (i1, i3) = (partition(3, &mut rng), partition(3, &mut rng));
            let i2 = if rng.gen_bool(0.5) { i1.clone() } else { partition(3, &mut rng) };
            let (s1, s2, s3) = (disguised(&r, &i1, &mut rng), disguised(&r, &i2, &mut rng), disguised(&r, &i3, &mut rng));
            let plain = feedback_equivalent(&s1, &s2).unwrap();
            prop_assert_eq!(plain, i1 == i2);
            let summed = feedback_equivalent(&s1.direct_sum(&s3).unwrap(), &s2.direct_sum(&s3).unwrap()).unwrap();
            prop_assert_eq!(summed, plain);
            prop_assert_eq!(dynamic_equivalent(&s1, &s2, 2).unwrap(), plain);
            prop_assert_eq!(stable_equivalent(&s1, &s2).unwrap(), plain);
        }
    }

    #[test]
    fn k0_is_additive(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in rings() {
            let (a, b) = (disguised(&r, &partition(4, &mut rng), &mut rng), disguised(&r, &partition(4, &mut rng), &mut rng));
            let (ka, kb) = (k0_class(&a).unwrap(), k0_class(&b).unwrap());
            prop_assert_eq!(k0_class(&a.direct_sum(&b).unwrap()).unwrap(), &ka + &kb);
            prop_assert_eq!(&(&ka + &kb) - &kb, ka.clone());
            prop_assert_eq!(&ka + &(-&ka), K0Class::default());
            let p = rng.gen_range(0..=3);
            let gamma = k0_class(&LinearSystem::gamma(r.clone(), p)).unwrap();
            prop_assert_eq!(k0_class(&a.dynamic_enlarge(p)).unwrap(), &ka + &gamma);
        }
    }

    #[test]
    fn accepted_certificates_are_morphisms(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in rings() {
            let source = disguised(&r, &partition(4, &mut rng), &mut rng);
            let n = source.state_rank();
            let p = common::invertible(&r, n, &mut rng);
            let target = {
                let m = source.input_count();
                let k = common::matrix(&r, m, n, &mut rng);
                let q = common::invertible(&r, m, &mut rng);
                let (a, b) = feedback_action(&r, source.endo(), source.input_gens(), &p, &k, &q).unwrap();
                LinearSystem::from_pair(r.clone(), a, b).unwrap()
            };
            let mut cert = IsoCertificate::solve(&source, &target, p.clone(), common::inverse(&r, &p)).unwrap();
            prop_assert!(verify_certificate(&source, &target, &cert).unwrap().is_accept());
            if n > 0 && rng.gen_bool(0.5) {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let bumped = r.add(cert.phi.get(i, j), &r.one());
                cert.phi.set(i, j, bumped);
                prop_assert!(!verify_certificate(&source, &target, &cert).unwrap().is_accept());
            }
            if verify_certificate(&source, &target, &cert).unwrap().is_accept() {
                prop_assert!(is_morphism(&cert.phi, &source, &target).unwrap());
                prop_assert!(is_morphism(&cert.psi, &target, &source).unwrap());
            }
        }
    }

    #[test]
    fn feedback_images_are_found_by_search(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for p in [2u64, 3] {
            let r = RingDescriptor::prime_field(p).unwrap();
            let n = rng.gen_range(1..=if p == 2 { 3 } else { 2 });
            let m = rng.gen_range(1..=2);
            let a = common::matrix(&r, n, n, &mut rng);
            let b = common::matrix(&r, n, m, &mut rng);
            let pm = common::invertible(&r, n, &mut rng);
            let k = common::matrix(&r, m, n, &mut rng);
            let q = common::invertible(&r, m, &mut rng);
            let (a2, b2) = feedback_action(&r, &a, &b, &pm, &k, &q).unwrap();
            prop_assert!(feedback_equivalent_pairs_bruteforce(&r, &a, &b, &a2, &b2).unwrap());
        }
    }
}

#[test]
fn signature_agrees_with_orbits_over_gf3() {
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        let report = cross_check(3, n, m, true).unwrap();
        assert!(report.reachable > 0);
        assert!(
            report.disagreements.is_empty(),
            "{:?}",
            report.disagreements
        );
    }
    let report = cross_check(3, 2, 2, false).unwrap();
    assert!(
        report.disagreements.is_empty(),
        "{:?}",
        report.disagreements
    );
}

#[test]
fn unreachable_systems_are_not_compared() {
    let q = RingDescriptor::Rationals;
    let s = LinearSystem::from_pair(q.clone(), q.zeros(1, 1), q.zeros(1, 0)).unwrap();
    assert!(feedback_equivalent(&s, &s).is_err());
    assert!(k0_class(&s).is_err());
}
