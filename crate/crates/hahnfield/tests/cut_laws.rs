mod common;

use common::cuts::{check_laws, dyadic, lex2, rand_cut, z};
use common::oracle;
use hahnfield::{Cut, Elem, Group, Side};
use proptest::prelude::*;

fn run_laws(g: &Group, seed: u64) -> Result<(), String> {
    let mut r = common::rng(seed);
    let (l, t, gm, l2) = (
        rand_cut(g, &mut r),
        rand_cut(g, &mut r),
        rand_cut(g, &mut r),
        rand_cut(g, &mut r),
    );
    check_laws(g, &l, &t, &gm, &l2, &mut r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn laws_over_integers(seed in any::<u64>()) {
        prop_assert_eq!(run_laws(&z(), seed), Ok(()));
    }

    #[test]
    fn laws_over_lex_plane(seed in any::<u64>()) {
        prop_assert_eq!(run_laws(&lex2(), seed), Ok(()));
    }

    #[test]
    fn laws_over_dyadics(seed in any::<u64>()) {
        prop_assert_eq!(run_laws(&dyadic(), seed), Ok(()));
    }

    #[test]
    fn sums_are_commutative_and_ordered(seed in any::<u64>()) {
        for g in [z(), lex2(), dyadic()] {
            let mut r = common::rng(seed);
            let (a, b) = (rand_cut(&g, &mut r), rand_cut(&g, &mut r));
            prop_assert_eq!(g.left_sum(&a, &b).unwrap(), g.left_sum(&b, &a).unwrap());
            prop_assert_eq!(g.right_sum(&a, &b).unwrap(), g.right_sum(&b, &a).unwrap());
            prop_assert!(g.cut_le(&g.left_sum(&a, &b).unwrap(), &g.right_sum(&a, &b).unwrap()).unwrap());
            prop_assert_eq!(g.neg_cut(&g.neg_cut(&a).unwrap()).unwrap(), a.clone());
        }
    }
}

#[test]
fn infinity_tables() {
    for g in [z(), lex2(), dyadic()] {
        let mut r = common::rng(7);
        for _ in 0..50 {
            let l = rand_cut(&g, &mut r);
            assert_eq!(
                g.left_sum(&l, &Cut::PosInf).unwrap(),
                if l == Cut::NegInf {
                    Cut::NegInf
                } else {
                    Cut::PosInf
                }
            );
            assert_eq!(g.left_sum(&l, &Cut::NegInf).unwrap(), Cut::NegInf);
            assert_eq!(g.right_sum(&l, &Cut::PosInf).unwrap(), Cut::PosInf);
            if l != Cut::PosInf {
                assert_eq!(g.right_sum(&l, &Cut::NegInf).unwrap(), Cut::NegInf);
            }
        }
    }
}

#[test]
fn principal_examples() {
    let g = z();
    let c = |n: i64, s: Side| Cut::Principal(Elem::int(n), s);
    assert_eq!(
        g.left_sum(&c(2, Side::Plus), &c(3, Side::Plus)).unwrap(),
        c(5, Side::Plus)
    );
    assert_eq!(g.canon(&c(3, Side::Minus)).unwrap(), c(2, Side::Plus));
    assert_eq!(
        g.diff(&c(3, Side::Plus), &c(3, Side::Plus)).unwrap(),
        c(0, Side::Plus)
    );
    assert_eq!(g.z_mul(&c(1, Side::Plus)).unwrap(), Cut::PosInf);
    assert_eq!(g.z_mul(&c(0, Side::Plus)).unwrap(), c(0, Side::Plus));
    let d = dyadic();
    assert_eq!(
        d.left_sum(&Cut::minus(Elem::int(0)), &Cut::minus(Elem::int(0)))
            .unwrap(),
        Cut::minus(Elem::int(0))
    );
    assert_eq!(
        d.diff(&Cut::minus(Elem::int(0)), &Cut::minus(Elem::int(0)))
            .unwrap(),
        Cut::plus(Elem::int(0))
    );
}

#[test]
fn oracle_equivalence_over_window() {
    let n = oracle::check_all(&z()).unwrap();
    assert!(n > 20_000, "{n}");
}

#[test]
fn enumerated_suprema() {
    let d = dyadic();
    let s: Vec<Elem> = (1..=8)
        .map(|i| Elem::scalar(hahnfield::Q64::new(-1, 1 << i)))
        .collect();
    assert_eq!(
        d.set_cut(&s, Side::Plus, true).unwrap(),
        Cut::minus(Elem::int(0))
    );
    let l = lex2();
    let s: Vec<Elem> = (0..6).map(|i| Elem::ints(&[2, i])).collect();
    assert_eq!(
        l.set_cut(&s, Side::Plus, true).unwrap(),
        Cut::Sub(Elem::ints(&[2, 0]), 1, Side::Plus)
    );
    let s: Vec<Elem> = (0..6).map(Elem::int).collect();
    assert_eq!(z().set_cut(&s, Side::Plus, true).unwrap(), Cut::PosInf);
}
