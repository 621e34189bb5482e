mod common;

use fbk_core::linalg::{self, det::det_division_free, integer};
use fbk_core::{
    CommRing, DynMatrix, Integers, Matrix, MatrixRing, Rationals, RingDescriptor, TypedRing,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::Rng;

fn fields() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::Rationals,
        RingDescriptor::prime_field(2).unwrap(),
        RingDescriptor::prime_field(5).unwrap(),
    ]
}

fn all_rings() -> Vec<RingDescriptor> {
    let mut v = fields();
    v.push(RingDescriptor::Integers);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_axioms(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in fields() {
            let (rows, cols) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
            let m = common::matrix(&r, rows, cols, &mut rng);
            let red = linalg::rref(&r, &m).unwrap();
            prop_assert_eq!(r.mat_mul(&red.transform, &m), red.reduced.clone());
            prop_assert!(!r.is_zero(&linalg::det(&r, &red.transform).unwrap()));
            prop_assert_eq!(red.rank, red.pivots.len());
            for (i, &pc) in red.pivots.iter().enumerate() {
                if i > 0 {
                    prop_assert!(pc > red.pivots[i - 1]);
                }
                for k in 0..rows {
                    let want = if k == i { r.one() } else { r.zero() };
                    prop_assert_eq!(red.reduced.get(k, pc), &want);
                }
                for j in 0..pc {
                    prop_assert!(r.is_zero(red.reduced.get(i, j)));
                }
            }
            for i in red.rank..rows {
                prop_assert!((0..cols).all(|j| r.is_zero(red.reduced.get(i, j))));
            }
            prop_assert_eq!(red.rank, linalg::rref(&r, &m.transpose()).unwrap().rank);
        }
    }

    #[test]
    fn kernels_and_solutions(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in all_rings() {
            let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let m = common::matrix(&r, rows, cols, &mut rng);
            let k = linalg::kernel_basis(&r, &m).unwrap();
            prop_assert!(r.mat_is_zero(&r.mat_mul(&m, &k)));
            let rank = linalg::canonical_span(&r, &m.transpose()).unwrap().cols();
            prop_assert_eq!(k.cols(), cols - rank);
            // Saturated: the quotient by the kernel lattice is torsion-free.
            prop_assert!(linalg::cokernel_structure(&r, &k, cols).unwrap().is_free());

            let x = common::matrix(&r, cols, 2, &mut rng);
            let b = r.mat_mul(&m, &x);
            let sol = linalg::solve_right(&r, &m, &b).unwrap();
            prop_assert_eq!(r.mat_mul(&m, &sol), b);
        }
    }

    #[test]
    fn column_space_sum_is_a_semilattice(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in all_rings() {
            let n = rng.gen_range(1..=4);
            let gens: Vec<DynMatrix> = (0..3)
                .map(|_| { let c = rng.gen_range(0..=3); common::matrix(&r, n, c, &mut rng) })
                .collect();
            let sum = |a: &DynMatrix, b: &DynMatrix| linalg::column_space_sum(&r, a, b).unwrap();
            let (a, b, c) = (&gens[0], &gens[1], &gens[2]);
            prop_assert_eq!(sum(&sum(a, b), c), sum(a, &sum(b, c)));
            prop_assert_eq!(sum(a, b), sum(b, a));
            let sa = sum(a, a);
            prop_assert_eq!(sa.clone(), linalg::canonical_span(&r, a).unwrap());
            prop_assert_eq!(sum(&sa, &sa), sa);
        }
    }

    #[test]
    fn smith_axioms(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let z = Integers;
        let (rows, cols) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let a = Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
        let s = integer::snf(&a);
        prop_assert_eq!(z.mat_mul(&z.mat_mul(&s.u, &a), &s.v), s.d.clone());
        prop_assert!(integer::det(&s.u).abs().is_one());
        prop_assert!(integer::det(&s.v).abs().is_one());
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[1] == BigInt::from(0) || (w[0] != BigInt::from(0) && (&w[1] % &w[0]) == BigInt::from(0)));
        }
        let (h, u) = integer::hnf(&a);
        prop_assert_eq!(z.mat_mul(&u, &a), h.clone());
        prop_assert!(common::is_row_hnf(&h));
    }

    #[test]
    fn determinants_agree(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(0..=5);
        let q = RingDescriptor::Rationals;
        let a = common::matrix(&q, n, n, &mut rng);
        let b = common::matrix(&q, n, n, &mut rng);
        let lowered = fbk_core::matrix::lower_matrix(&Rationals, &a);
        prop_assert_eq!(
            Rationals.lift(&det_division_free(&Rationals, &lowered)),
            linalg::det(&q, &a).unwrap()
        );
        prop_assert_eq!(
            linalg::det(&q, &q.mat_mul(&a, &b)).unwrap(),
            q.mul(&linalg::det(&q, &a).unwrap(), &linalg::det(&q, &b).unwrap())
        );
        let z = RingDescriptor::Integers;
        let ai = common::matrix(&z, n, n, &mut rng);
        let lowered = fbk_core::matrix::lower_matrix(&Integers, &ai);
        prop_assert_eq!(integer::det(&lowered), det_division_free(&Integers, &lowered));
    }
}

#[test]
fn membership_matches_solvability() {
    let mut rng = common::rng(11);
    for r in all_rings() {
        let mut hits = 0;
        for _ in 0..500 {
            let n = rng.gen_range(1..=4);
            let g = common::matrix(&r, n, rng.gen_range(0..=3), &mut rng);
            let v = if rng.gen_bool(0.5) {
                let c = common::matrix(&r, g.cols(), 1, &mut rng);
                r.mat_mul(&g, &c)
            } else {
                common::matrix(&r, n, 1, &mut rng)
            };
            let member = linalg::membership(&r, &v, &g).unwrap();
            assert_eq!(member, linalg::solve_right(&r, &g, &v).is_ok());
            hits += member as usize;
        }
        assert!(hits > 100 && hits < 500, "{}: {hits}", r.name());
    }
}

#[test]
fn worked_examples() {
    let q = RingDescriptor::Rationals;
    let z = RingDescriptor::Integers;
    let id3 = q.identity(3);
    let red = linalg::rref(&q, &id3).unwrap();
    assert_eq!((red.rank, red.pivots), (3, vec![0, 1, 2]));
    let b = q.mat_from_i64(&[&[4, 5], &[6, 7], &[8, 9]]);
    assert_eq!(linalg::solve_right(&q, &id3, &b).unwrap(), b);
    assert_eq!(
        linalg::kernel_basis(&q, &q.zeros(2, 2)).unwrap(),
        q.identity(2)
    );

    let (h, u) = linalg::hnf(&z, &z.zeros(2, 3)).unwrap();
    assert_eq!((h, u), (z.zeros(2, 3), z.identity(2)));
    let s = linalg::snf(&z, &z.mat_from_i64(&[&[0]])).unwrap();
    assert_eq!(s.diagonal(), vec![BigInt::from(0)]);
    assert_eq!(
        linalg::snf(&z, &z.identity(3)).unwrap().diagonal(),
        vec![BigInt::one(); 3]
    );

    let c = linalg::cokernel_structure(&z, &z.zeros(3, 0), 3).unwrap();
    assert_eq!((c.free_rank, c.torsion.len()), (3, 0));
    let c = linalg::cokernel_structure(&z, &z.mat_from_i64(&[&[2]]), 1).unwrap();
    assert_eq!(c.torsion, vec![BigInt::from(2)]);
    assert!(linalg::cokernel_structure(&z, &z.zeros(2, 1), 3).is_err());
}
