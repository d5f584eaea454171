use hahnfield::{Cut, Elem, Group, Side, Q64};
use rand::Rng;

pub fn z() -> Group {
    Group::Integers
}

pub fn lex2() -> Group {
    Group::LexPower(2)
}

pub fn dyadic() -> Group {
    Group::PDivisible { p: 2, max_depth: 8 }
}

fn side(rng: &mut impl Rng) -> Side {
    if rng.gen_bool(0.5) {
        Side::Plus
    } else {
        Side::Minus
    }
}

pub fn rand_elem(g: &Group, rng: &mut impl Rng) -> Elem {
    match g {
        Group::LexPower(n) => Elem(
            (0..*n)
                .map(|_| Q64::from_integer(rng.gen_range(-4..=4)))
                .collect(),
        ),
        Group::PDivisible { p, .. } => {
            let j = rng.gen_range(0..=3u32);
            Elem::scalar(Q64::new(rng.gen_range(-12..=12), (*p as i64).pow(j)))
        }
        Group::Rational(gens) => {
            let s = g.step().unwrap_or(gens[0]);
            Elem::scalar(s * Q64::from_integer(rng.gen_range(-8..=8)))
        }
        Group::Integers => Elem::int(rng.gen_range(-10..=10)),
    }
}

/// A random cut, infinite with probability 1/6.
pub fn rand_cut(g: &Group, rng: &mut impl Rng) -> Cut {
    let c = match rng.gen_range(0..12) {
        0 => Cut::NegInf,
        1 => Cut::PosInf,
        2 | 3 if matches!(g, Group::LexPower(_)) => {
            let mut e = rand_elem(g, rng);
            e.0[1] = Q64::from_integer(0);
            Cut::Sub(e, 1, side(rng))
        }
        2 if g.is_dense() => Cut::Gap(Q64::new(rng.gen_range(-12..=12) * 3 + 1, 3)),
        _ => Cut::Principal(rand_elem(g, rng), side(rng)),
    };
    g.canon(&c).unwrap()
}

/// A cut above `0-`.
pub fn rand_pos_cut(g: &Group, rng: &mut impl Rng) -> Cut {
    loop {
        let c = rand_cut(g, rng);
        if g.cut_lt(&Cut::minus(g.zero()), &c).unwrap() {
            return c;
        }
    }
}

fn lt0(g: &Group, c: &Cut) -> bool {
    g.cmp_cut_elem(c, &g.zero()).unwrap() == std::cmp::Ordering::Less
}

fn gt0(g: &Group, c: &Cut) -> bool {
    g.cmp_cut_elem(c, &g.zero()).unwrap() == std::cmp::Ordering::Greater
}

/// The sum, difference and iteration laws on one tuple. Returns the name
/// of the first failing law.
pub fn check_laws(
    g: &Group,
    l: &Cut,
    t: &Cut,
    gm: &Cut,
    l2: &Cut,
    rng: &mut impl Rng,
) -> Result<(), String> {
    let le = |a: &Cut, b: &Cut| g.cut_le(a, b).unwrap();
    let lt = |a: &Cut, b: &Cut| g.cut_lt(a, b).unwrap();
    let add = |a: &Cut, b: &Cut| g.left_sum(a, b).unwrap();
    let radd = |a: &Cut, b: &Cut| g.right_sum(a, b).unwrap();
    let sub = |a: &Cut, b: &Cut| g.diff(a, b).unwrap();
    let neg = |a: &Cut| g.neg_cut(a).unwrap();
    let plus_n = |a: &Cut, b: &Cut, n: usize| g.n_fold(a, b, n, Side::Plus).unwrap();
    let minus_n = |a: &Cut, b: &Cut, n: usize| g.n_fold(a, b, n, Side::Minus).unwrap();
    let nmul = |b: &Cut, n: usize| g.n_mul(b, n).unwrap();
    let fail = |name: &str| {
        Err(format!(
            "{name} fails at L={} T={} G={} L'={}",
            g.fmt_cut(l),
            g.fmt_cut(t),
            g.fmt_cut(gm),
            g.fmt_cut(l2)
        ))
    };

    if lt(l, t) != lt0(g, &sub(l, t)) {
        return fail("less-than via difference");
    }
    if le(t, l) != gt0(g, &sub(l, t)) {
        return fail("at-least via difference");
    }
    if lt(&neg(t), l) != gt0(g, &add(l, t)) {
        return fail("above a negation via sum");
    }
    if lt(l, &add(gm, t)) != lt(&sub(l, gm), t) {
        return fail("below a sum via difference");
    }
    if le(&add(gm, t), l) != le(t, &sub(l, gm)) {
        return fail("above a sum via difference");
    }
    if le(&add(&neg(gm), t), l) != le(t, &radd(l, gm)) {
        return fail("above a negated sum via right sum");
    }

    let n = rng.gen_range(0..=4usize);
    let n2 = rng.gen_range(0..=4usize);
    if !le(&plus_n(&minus_n(l, gm, n), gm, n), l) || !le(l, &minus_n(&plus_n(l, gm, n), gm, n)) {
        return fail(&format!("n-fold sandwich (n={n})"));
    }
    if !le(
        &add(&minus_n(l, gm, n), &minus_n(l2, gm, n2)),
        &minus_n(&add(l, l2), gm, n + n2),
    ) {
        return fail(&format!("n-fold sum of differences (n={n}, n'={n2})"));
    }

    let m = rng.gen_range(1..=4usize);
    let k = rng.gen_range(0..m);
    let d = rng.gen_range(0..=3usize);
    let mk = minus_n(&nmul(gm, m), gm, k);
    if !le(&add(&minus_n(l, gm, m + d), &mk), &minus_n(l, gm, d + k)) {
        return fail(&format!("shifted multiple bound (d={d}, k={k}, m={m})"));
    }
    let i = rng.gen_range(0..m);
    let j = m + d - i;
    if j < m {
        let lhs = add(&add(&minus_n(l, gm, i), &minus_n(l2, gm, j)), &mk);
        if !le(&lhs, &minus_n(&add(l, l2), gm, d + k)) {
            return fail(&format!(
                "three-term bound (i={i}, j={j}, k={k}, m={m}, d={d})"
            ));
        }
    }

    let anchor = match gm {
        Cut::Principal(e, _) | Cut::Sub(e, _, _) => e.clone(),
        _ => g.zero(),
    };
    let hat = g.hat(gm).unwrap();
    if g.shift(&anchor, &hat).unwrap() == *gm && mk != nmul(gm, m - k) {
        return fail(&format!(
            "iterated difference of a coset cut (k={k}, m={m})"
        ));
    }
    if sub(&hat, &hat) != hat || add(&hat, &hat) != hat {
        return fail("hat idempotence");
    }
    Ok(())
}
