use std::sync::Arc;

use hahnfield::factor::derive_factor_set;
use hahnfield::{Ambient, Coeff, Config, Elem, FactorSet, Field, Group, Section, Series, Q64};
use rand::Rng;

pub fn zq() -> Arc<Ambient> {
    Ambient::simple(Group::Integers, Field::Rationals).unwrap()
}

pub fn lexq() -> Arc<Ambient> {
    Ambient::simple(Group::LexPower(2), Field::Rationals).unwrap()
}

pub fn half_group() -> Group {
    Group::Rational(vec![Q64::new(1, 2)])
}

pub fn half_section(k: &Field) -> Section {
    Section::RootScaled {
        step: Q64::new(1, 2),
        order: 2,
        c: k.int(2),
    }
}

/// `Q((1/2 Z))` with `(t^(1/2))^2 = 2 t`.
pub fn half_derived() -> Arc<Ambient> {
    let g = half_group();
    let k = Field::Rationals;
    let f = derive_factor_set(&g, &k, &half_section(&k)).unwrap();
    assert!(matches!(f, FactorSet::Derived(_)));
    Ambient::new(g, k, f, Config::default()).unwrap()
}

pub fn half_trivial() -> Arc<Ambient> {
    Ambient::simple(half_group(), Field::Rationals).unwrap()
}

pub fn rand_coeff(k: &Field, rng: &mut impl Rng) -> Coeff {
    loop {
        let c = match k {
            Field::Rationals => {
                let q = num_rational::BigRational::new(
                    rng.gen_range(-5..=5).into(),
                    rng.gen_range(1..=3).into(),
                );
                k.from_q(&q).unwrap()
            }
            _ => k.int(rng.gen_range(-5..=5)),
        };
        if !k.is_zero(&c) {
            return c;
        }
    }
}

/// An exponent of moderate size for series generators.
pub fn rand_exp(g: &Group, rng: &mut impl Rng) -> Elem {
    match g {
        Group::LexPower(n) => Elem(
            (0..*n)
                .map(|_| Q64::from_integer(rng.gen_range(-2..=3)))
                .collect(),
        ),
        Group::Rational(_) => Elem::scalar(Q64::new(rng.gen_range(-4..=8), 2)),
        Group::PDivisible { p, .. } => Elem::scalar(Q64::new(rng.gen_range(-6..=10), *p as i64)),
        Group::Integers => Elem::int(rng.gen_range(-3..=6)),
    }
}

pub fn rand_finite(amb: &Arc<Ambient>, rng: &mut impl Rng, max_terms: usize) -> Series {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n)
        .map(|_| (rand_exp(&amb.group, rng), rand_coeff(&amb.field, rng)))
        .collect::<Vec<_>>();
    let mut t: Vec<(Elem, Coeff)> = Vec::new();
    for (e, c) in terms {
        if !t.iter().any(|x| x.0 == e) {
            t.push((e, c));
        }
    }
    Series::from_terms(amb, t).unwrap()
}

/// A nonzero finite series whose support is a single exponent plus
/// positive offsets from it.
pub fn rand_unit_like(amb: &Arc<Ambient>, rng: &mut impl Rng) -> Series {
    let g = &amb.group;
    let lead = rand_exp(g, rng);
    let mut t = vec![(lead.clone(), rand_coeff(&amb.field, rng))];
    for _ in 0..rng.gen_range(0..=2) {
        let mut d = rand_exp(g, rng);
        if !d.is_positive() {
            d = d.neg();
        }
        if d.is_zero() || t.iter().any(|x| x.0 == lead.add(&d)) {
            continue;
        }
        t.push((lead.add(&d), rand_coeff(&amb.field, rng)));
    }
    Series::from_terms(amb, t).unwrap()
}

/// Finite most of the time, otherwise the quotient of two finite series.
pub fn rand_series(amb: &Arc<Ambient>, rng: &mut impl Rng) -> Series {
    if rng.gen_bool(0.7) {
        return rand_finite(amb, rng, 4);
    }
    let num = rand_finite(amb, rng, 2);
    let den = rand_unit_like(amb, rng);
    num.mul(&den.invert().unwrap())
}
