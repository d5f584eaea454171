//! Set-based evaluation of the cut operations over `Z`. Left and right
//! sets live on a wide window `[-1000, 1000]`; results are compared on
//! `[-50, 50]`. Finite cuts have parameters in `[-10, 10]` and are iterated
//! at most twice, so a finite result stays inside `[-40, 40]`, while an
//! extremum coming from an unbounded set lies beyond `500`.

use hahnfield::{Cut, Elem, Group, Side};

pub const W: i64 = 50;
const BIG: i64 = 1000;
const EDGE: i64 = 500;

pub type Set = Vec<i64>;

/// The comparison window.
pub fn window() -> impl Iterator<Item = i64> {
    -W..=W
}

fn wide() -> impl Iterator<Item = i64> {
    -BIG..=BIG
}

/// Every cut the oracle covers.
pub fn all_cuts() -> Vec<Cut> {
    let mut v = vec![Cut::NegInf, Cut::PosInf];
    for n in -10..=10 {
        v.push(Cut::Principal(Elem::int(n), Side::Plus));
        v.push(Cut::Principal(Elem::int(n), Side::Minus));
    }
    v
}

/// The left set, read off the literal definition of each form.
pub fn left(c: &Cut) -> Set {
    wide()
        .filter(|&x| match c {
            Cut::NegInf => false,
            Cut::PosInf => true,
            Cut::Principal(e, Side::Plus) => x <= e.0[0].to_integer(),
            Cut::Principal(e, Side::Minus) => x < e.0[0].to_integer(),
            _ => panic!("not a cut of Z"),
        })
        .collect()
}

pub fn right(c: &Cut) -> Set {
    let l = left(c);
    let top = l.last().copied().unwrap_or(-BIG - 1);
    wide().filter(|&x| x > top).collect()
}

/// `S^+`: the left set is the downward closure of `S`.
pub fn sup_plus(s: &[i64]) -> Set {
    match s.iter().max() {
        None => Vec::new(),
        Some(&m) if m >= EDGE => wide().collect(),
        Some(&m) => wide().filter(|&x| x <= m).collect(),
    }
}

/// `S^-`: the right set is the upward closure of `S`.
pub fn inf_minus(s: &[i64]) -> Set {
    match s.iter().min() {
        None => wide().collect(),
        Some(&m) if m <= -EDGE => Vec::new(),
        Some(&m) => wide().filter(|&x| x < m).collect(),
    }
}

/// The extreme values of `{f(x, y)}` for `f` monotone in both arguments;
/// the set of all pairs is too large to list on the wide window.
fn pairs(a: &[i64], b: &[i64], f: impl Fn(i64, i64) -> i64) -> Vec<i64> {
    let (Some(a0), Some(a1), Some(b0), Some(b1)) = (a.first(), a.last(), b.first(), b.last())
    else {
        return Vec::new();
    };
    vec![f(*a0, *b0), f(*a0, *b1), f(*a1, *b0), f(*a1, *b1)]
}

/// A cut of `Z` given by a left set of the window.
pub fn from_left(l: &[i64]) -> Cut {
    match l.iter().max() {
        None => Cut::NegInf,
        Some(&BIG) => Cut::PosInf,
        Some(&m) => Cut::Principal(Elem::int(m), Side::Plus),
    }
}

pub fn left_sum(a: &Cut, b: &Cut) -> Set {
    sup_plus(&pairs(&left(a), &left(b), |x, y| x + y))
}

pub fn right_sum(a: &Cut, b: &Cut) -> Set {
    inf_minus(&pairs(&right(a), &right(b), |x, y| x + y))
}

pub fn diff(a: &Cut, b: &Cut) -> Set {
    inf_minus(&pairs(&right(a), &left(b), |x, y| x - y))
}

pub fn neg(a: &Cut) -> Set {
    let r = right(a);
    match r.first() {
        None => Vec::new(),
        Some(&m) if m == -BIG => wide().collect(),
        Some(&m) => wide().filter(|&x| x <= -m).collect(),
    }
}

pub fn shift(g: i64, a: &Cut) -> Set {
    sup_plus(&left(a).iter().map(|x| x + g).collect::<Vec<_>>())
}

pub fn n_fold(a: &Cut, b: &Cut, n: usize, sign: Side) -> Set {
    let mut acc = a.clone();
    for _ in 0..n {
        let s = match sign {
            Side::Plus => left_sum(&acc, b),
            Side::Minus => diff(&acc, b),
        };
        acc = from_left(&s);
    }
    left(&acc)
}

pub fn n_mul(b: &Cut, n: usize) -> Set {
    if n == 0 {
        return left(&Cut::Principal(Elem::int(0), Side::Plus));
    }
    n_fold(b, b, n - 1, Side::Plus)
}

/// `sup_n n b`, iterating until the multiples leave the finite range or
/// stop moving.
pub fn z_mul(b: &Cut) -> Set {
    let mut acc = b.clone();
    let mut best: Vec<i64> = left(b);
    for _ in 0..2 * EDGE {
        let next = left_sum(&acc, b);
        if next.len() > best.len() {
            best = next.clone();
        }
        if next.last().is_some_and(|&m| m >= EDGE) || from_left(&next) == acc {
            break;
        }
        acc = from_left(&next);
    }
    sup_plus(&best)
}

pub fn le(a: &Cut, b: &Cut) -> bool {
    left(a).len() <= left(b).len()
}

/// Compares an implementation result with an oracle left set on the
/// comparison window.
pub fn same(g: &Group, got: &Cut, want: &[i64]) -> bool {
    let got = g.canon(got).unwrap();
    let clip = |s: &[i64]| {
        s.iter()
            .copied()
            .filter(|x| x.abs() <= W)
            .collect::<Vec<_>>()
    };
    clip(&left(&got)) == clip(want)
}

/// Every operation against the set model, on every cut of the window.
/// Returns the number of comparisons made.
pub fn check_all(g: &Group) -> Result<usize, String> {
    let mut n_checks = 0usize;
    let mut check = |ok: bool, what: String| {
        n_checks += 1;
        if ok {
            Ok(())
        } else {
            Err(what)
        }
    };
    let err = |e: hahnfield::Error| e.to_string();
    let cuts = all_cuts();
    for a in &cuts {
        check(
            same(g, &g.canon(a).map_err(err)?, &left(a)),
            format!("canon {a:?}"),
        )?;
        check(
            same(g, &g.neg_cut(a).map_err(err)?, &neg(a)),
            format!("neg {a:?}"),
        )?;
        for x in window() {
            let inside =
                g.cmp_cut_elem(a, &Elem::int(x)).map_err(err)? == core::cmp::Ordering::Greater;
            check(
                inside == left(a).contains(&x),
                format!("membership {x} in {a:?}"),
            )?;
        }
        for s in -5..=5 {
            check(
                same(g, &g.shift(&Elem::int(s), a).map_err(err)?, &shift(s, a)),
                format!("shift {s} {a:?}"),
            )?;
        }
        for n in 0..=2 {
            check(
                same(g, &g.n_mul(a, n).map_err(err)?, &n_mul(a, n)),
                format!("n_mul {n} {a:?}"),
            )?;
        }
        if g.cut_lt(&Cut::minus(Elem::int(0)), a).map_err(err)? {
            check(
                same(g, &g.z_mul(a).map_err(err)?, &z_mul(a)),
                format!("z_mul {a:?}"),
            )?;
        }
        for b in &cuts {
            check(
                g.cut_le(a, b).map_err(err)? == le(a, b),
                format!("le {a:?} {b:?}"),
            )?;
            let mx = if le(a, b) { left(b) } else { left(a) };
            check(
                same(g, &g.max_cut(a, b).map_err(err)?, &mx),
                format!("max {a:?} {b:?}"),
            )?;
            check(
                same(g, &g.left_sum(a, b).map_err(err)?, &left_sum(a, b)),
                format!("sum {a:?} {b:?}"),
            )?;
            check(
                same(g, &g.right_sum(a, b).map_err(err)?, &right_sum(a, b)),
                format!("rsum {a:?} {b:?}"),
            )?;
            check(
                same(g, &g.diff(a, b).map_err(err)?, &diff(a, b)),
                format!("diff {a:?} {b:?}"),
            )?;
            for n in 1..=2 {
                for s in [Side::Plus, Side::Minus] {
                    let got = g.n_fold(a, b, n, s).map_err(err)?;
                    check(
                        same(g, &got, &n_fold(a, b, n, s)),
                        format!("n_fold {a:?} {b:?} {n} {s:?}"),
                    )?;
                }
            }
        }
    }
    for lo in -10..=10 {
        for hi in lo..=lo + 3 {
            let set: Vec<Elem> = (lo..=hi).map(Elem::int).collect();
            let want = sup_plus(&(lo..=hi).collect::<Vec<_>>());
            check(
                same(g, &g.set_cut(&set, Side::Plus, false).map_err(err)?, &want),
                format!("sup {lo}..={hi}"),
            )?;
        }
    }
    Ok(n_checks)
}
