//! Whole-property checks returning `Err(description)` on the first
//! violation, shared by the proptest suites and the acceptance runner.

use std::cmp::Ordering;
use std::sync::Arc;

use hahnfield::extend::{normal_chains, normalize_sum, split_quotient};
use hahnfield::tower::TowerSamples;
use hahnfield::{Ambient, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::cuts::rand_cut;
use super::series::{rand_coeff, rand_exp, rand_finite, rand_series, rand_unit_like};

pub fn ring_laws(amb: &Arc<Ambient>, seed: u64, depth: usize) -> Result<(), String> {
    let eq = |a: &Series, b: &Series| a.eq_prefix(b, depth).unwrap();
    let mut r = super::rng(seed);
    let (x, y, z) = (
        rand_series(amb, &mut r),
        rand_series(amb, &mut r),
        rand_series(amb, &mut r),
    );
    let c = rand_coeff(&amb.field, &mut r);
    let one = Series::one(amb);
    let checks = [
        (
            "additive associativity",
            eq(&x.add(&y).add(&z), &x.add(&y.add(&z))),
        ),
        ("additive commutativity", eq(&x.add(&y), &y.add(&x))),
        ("additive inverse", eq(&x.add(&x.neg()), &Series::zero(amb))),
        (
            "multiplicative associativity",
            eq(&x.mul(&y).mul(&z), &x.mul(&y.mul(&z))),
        ),
        ("multiplicative commutativity", eq(&x.mul(&y), &y.mul(&x))),
        ("unit", eq(&x.mul(&one), &x)),
        (
            "distributivity",
            eq(&x.mul(&y.add(&z)), &x.mul(&y).add(&x.mul(&z))),
        ),
        ("scalars", eq(&x.scale(&c).mul(&y), &x.mul(&y).scale(&c))),
    ];
    for (name, ok) in checks {
        if !ok {
            return Err(format!("{name}: x={:?} y={:?} z={:?}", x, y, z));
        }
    }
    let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
    let vxy = x.mul(&y).valuation().unwrap();
    match (&vx, &vy) {
        (Some(a), Some(b)) if vxy.as_ref() != Some(&a.add(b)) => {
            return Err("v(xy) != v(x) + v(y)".into())
        }
        (None, _) | (_, None) if vxy.is_some() => {
            return Err("zero factor with nonzero product".into())
        }
        _ => {}
    }
    if let (Some(a), Some(b)) = (&vx, &vy) {
        if let Some(s) = x.add(&y).valuation().unwrap() {
            if s < *a.min(b) {
                return Err("v(x + y) < min".into());
            }
        }
    }
    Ok(())
}

fn nonzero_finite(amb: &Arc<Ambient>, rng: &mut impl Rng, max_terms: usize) -> Series {
    loop {
        let x = rand_finite(amb, rng, max_terms);
        if !x.is_finite_zero() {
            return x;
        }
    }
}

/// One random quotient split: the three postconditions, the normal form
/// chains, value preservation and the leading-value certificate.
pub fn split_case(amb: &Arc<Ambient>, seed: u64, depth: usize) -> Result<(), String> {
    let mut r = super::rng(seed);
    let d = nonzero_finite(amb, &mut r, 3);
    let c = rand_unit_like(amb, &mut r);
    let k = r.gen_range(1..=3);
    let gamma = rand_cut(&amb.group, &mut r);
    let ctx = || format!("d={:?} c={:?} k={k} gamma={gamma:?}", d, c);
    let sp = split_quotient(&d, &c, k, &gamma).map_err(|e| format!("{e} {}", ctx()))?;
    let chk = sp
        .verify(&d, &c, k, &gamma, depth)
        .map_err(|e| format!("{e} {}", ctx()))?;
    if !chk.passed() {
        return Err(format!("{chk:?} {}", ctx()));
    }
    let n = normalize_sum(&sp.b1, &gamma, amb).map_err(|e| format!("normalize: {e} {}", ctx()))?;
    if !normal_chains(&n, &amb.group).unwrap() || !n.certified(&gamma).unwrap() {
        return Err(format!("chains {}", ctx()));
    }
    let (v0, v1) = (sp.b1.value(amb).unwrap(), n.value(amb).unwrap());
    if !v0.eq_prefix(&v1, depth).unwrap() {
        return Err(format!("normal form changes the value {}", ctx()));
    }
    if let Some((r1, _)) = n.summands.first() {
        let lead = r1.valuation().unwrap().unwrap();
        if v1.valuation().unwrap() != Some(lead.clone()) {
            return Err(format!("leading value is not v(r1) {}", ctx()));
        }
        if amb.group.cmp_cut_elem(&gamma, &lead).unwrap() != Ordering::Greater {
            return Err(format!("v(r1) is not below gamma {}", ctx()));
        }
    }
    Ok(())
}

pub fn tower_samples(amb: &Arc<Ambient>, seed: u64, n: usize, depth: usize) -> TowerSamples {
    let mut r = super::rng(seed);
    let g = &amb.group;
    TowerSamples {
        series: (0..n).map(|_| rand_series(amb, &mut r)).collect(),
        cuts: (0..n).map(|_| rand_cut(g, &mut r)).collect(),
        elems: (0..n).map(|_| rand_exp(g, &mut r)).collect(),
        depth,
    }
}

/// Binomial series of `(1 + t)^(1/2)` from exact rational arithmetic.
pub fn sqrt_oracle(n: usize) -> Vec<BigRational> {
    let one = BigRational::from_integer(BigInt::from(1));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut out = vec![one.clone()];
    for i in 1..n {
        let i_q = BigRational::from_integer(BigInt::from(i as i64));
        let next = out[i - 1].clone() * (half.clone() - i_q.clone() + one.clone()) / i_q;
        out.push(next);
    }
    out
}
