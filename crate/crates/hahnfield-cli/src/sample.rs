//! Seeded samplers for the checking commands.

use std::sync::Arc;

use hahnfield::{Ambient, Coeff, Cut, Elem, Field, Group, Series, Side, Q64};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn elem(g: &Group, rng: &mut impl Rng) -> Elem {
    match g {
        Group::LexPower(n) => Elem(
            (0..*n)
                .map(|_| Q64::from_integer(rng.gen_range(-3..=3)))
                .collect(),
        ),
        _ => {
            let q = g.quantum();
            let k = rng.gen_range(-12..=12);
            Elem::scalar(q * Q64::from_integer(k))
        }
    }
}

/// Both infinities, principal cuts and, where the group has them, subgroup
/// cuts and gaps.
pub fn cut(g: &Group, rng: &mut impl Rng) -> Cut {
    let side = if rng.gen_bool(0.5) {
        Side::Plus
    } else {
        Side::Minus
    };
    let c = match rng.gen_range(0..12) {
        0 => Cut::NegInf,
        1 => Cut::PosInf,
        2 | 3 => match g {
            Group::LexPower(n) if *n > 1 => {
                let mut e = elem(g, rng);
                let k = rng.gen_range(1..*n);
                for x in e.0.iter_mut().skip(k) {
                    *x = Q64::from_integer(0);
                }
                Cut::Sub(e, k, side)
            }
            _ if g.is_dense() => {
                let q = g.quantum() * Q64::new(rng.gen_range(-20..=20), 3);
                if g.check(&Elem::scalar(q)).is_ok() {
                    Cut::Principal(Elem::scalar(q), side)
                } else {
                    Cut::Gap(q)
                }
            }
            _ => Cut::Principal(elem(g, rng), side),
        },
        _ => Cut::Principal(elem(g, rng), side),
    };
    g.canon(&c).expect("sampled cuts are representable")
}

pub fn coeff(k: &Field, rng: &mut impl Rng) -> Coeff {
    loop {
        let c = match k {
            Field::Rationals => {
                let q = BigRational::new(
                    BigInt::from(rng.gen_range(-5..=5)),
                    BigInt::from(rng.gen_range(1..=3)),
                );
                k.from_q(&q).expect("rationals embed")
            }
            _ => {
                let a = k.int(rng.gen_range(0..=6));
                match k.var() {
                    Ok(y) if rng.gen_bool(0.3) => k.add(&a, &y),
                    _ => a,
                }
            }
        };
        if !k.is_zero(&c) {
            return c;
        }
    }
}

pub fn finite(amb: &Arc<Ambient>, rng: &mut impl Rng, max_terms: usize) -> Series {
    let mut t: Vec<(Elem, Coeff)> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let e = elem(&amb.group, rng);
        if !t.iter().any(|x| x.0 == e) {
            t.push((e, coeff(&amb.field, rng)));
        }
    }
    Series::from_terms(amb, t).expect("sampled terms are valid")
}

/// Finite, or a finite numerator over `1 - t^g` with `g > 0`.
pub fn series(amb: &Arc<Ambient>, rng: &mut impl Rng) -> Series {
    let num = finite(amb, rng, 4);
    if rng.gen_bool(0.7) {
        return num;
    }
    let mut g = elem(&amb.group, rng);
    if g.is_negative() {
        g = g.neg();
    }
    if g.is_zero() {
        return num;
    }
    num.mul(&Series::geom(amb, g).expect("positive ratio"))
}
