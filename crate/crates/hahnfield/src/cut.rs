//! Cuts of an ordered abelian group and their arithmetic.
//!
//! Every cut is kept in a canonical form. Over the discrete groups (`Z`,
//! `Z^n` lex, cyclic subgroups of `Q`) the canonical side is always `+`:
//! `3-` over `Z` is stored as `2+`, and `sub(g,k)-` as the `+` cut of the
//! preceding coset. Over `Z[1/p]` both sides are kept and gaps appear at
//! rationals outside the group.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{fmt_q, Elem, Group, Q64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cut {
    NegInf,
    PosInf,
    Principal(Elem, Side),
    /// `(g + H)^side` where `H` is the convex subgroup of `Z^n` whose first
    /// `level` coordinates vanish.
    Sub(Elem, usize, Side),
    /// The cut at a rational outside a dense group.
    Gap(Q64),
}

impl Cut {
    pub fn plus(e: Elem) -> Cut {
        Cut::Principal(e, Side::Plus)
    }

    pub fn minus(e: Elem) -> Cut {
        Cut::Principal(e, Side::Minus)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cut::NegInf | Cut::PosInf)
    }
}

/// Working representation: the left set is `{x : x[..k] <= p}` for a lex
/// prefix `p` of length `k`, or `{x < r}` / `{x <= r}` in the dense case.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Ic {
    Neg,
    Pos,
    Lex(Vec<Q64>),
    Dense(Q64, bool),
}

fn add_v(a: &[Q64], b: &[Q64]) -> Vec<Q64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_v(a: &[Q64], b: &[Q64]) -> Vec<Q64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cmp_lex(p: &[Q64], q: &[Q64]) -> Ordering {
    let m = p.len().min(q.len());
    p[..m].cmp(&q[..m]).then_with(|| q.len().cmp(&p.len()))
}

impl Group {
    fn unit(&self, k: usize) -> Vec<Q64> {
        let mut v = alloc::vec![Q64::zero(); k];
        v[k - 1] = self.step().unwrap();
        v
    }

    /// Membership in `Z[1/p^inf]`, ignoring the depth bound.
    fn in_dense(&self, q: &Q64) -> bool {
        let Group::PDivisible { p, .. } = self else {
            return false;
        };
        let mut d = *q.denom();
        while d % (*p as i64) == 0 {
            d /= *p as i64;
        }
        d == 1
    }

    fn to_ic(&self, c: &Cut) -> Result<Ic> {
        let n = self.rank();
        Ok(match c {
            Cut::NegInf => Ic::Neg,
            Cut::PosInf => Ic::Pos,
            Cut::Principal(e, s) => {
                self.check(e)?;
                if self.is_dense() {
                    Ic::Dense(e.0[0], *s == Side::Plus)
                } else if *s == Side::Plus {
                    Ic::Lex(e.0.clone())
                } else {
                    Ic::Lex(sub_v(&e.0, &self.unit(n)))
                }
            }
            Cut::Sub(e, k, s) => {
                if *k == 0 {
                    return Ok(if *s == Side::Plus { Ic::Pos } else { Ic::Neg });
                }
                if *k >= n {
                    return self.to_ic(&Cut::Principal(e.clone(), *s));
                }
                self.check(e)?;
                let p = e.0[..*k].to_vec();
                if *s == Side::Plus {
                    Ic::Lex(p)
                } else {
                    Ic::Lex(sub_v(&p, &self.unit(*k)))
                }
            }
            Cut::Gap(q) => {
                if self.is_dense() {
                    if self.in_dense(q) {
                        self.check(&Elem::scalar(*q))?;
                    }
                    Ic::Dense(*q, false)
                } else {
                    return Err(Error::UnrepresentableCut(format!(
                        "gap({}) needs a dense group",
                        fmt_q(q)
                    )));
                }
            }
        })
    }

    fn cut_of_ic(&self, c: Ic) -> Result<Cut> {
        let n = self.rank();
        Ok(match c {
            Ic::Neg => Cut::NegInf,
            Ic::Pos => Cut::PosInf,
            Ic::Lex(p) => {
                if p.len() == n {
                    Cut::Principal(Elem(p), Side::Plus)
                } else {
                    let k = p.len();
                    let mut v = p;
                    v.resize(n, Q64::zero());
                    Cut::Sub(Elem(v), k, Side::Plus)
                }
            }
            Ic::Dense(r, closed) => {
                if self.in_dense(&r) {
                    self.check(&Elem::scalar(r))?;
                    Cut::Principal(
                        Elem::scalar(r),
                        if closed { Side::Plus } else { Side::Minus },
                    )
                } else {
                    Cut::Gap(r)
                }
            }
        })
    }

    /// Right set of a dense cut is closed at its point.
    fn right_closed(&self, r: &Q64, closed: bool) -> bool {
        !closed && self.in_dense(r)
    }

    pub fn canon(&self, c: &Cut) -> Result<Cut> {
        let ic = self.to_ic(c)?;
        self.cut_of_ic(ic)
    }

    pub fn cmp_cut(&self, a: &Cut, b: &Cut) -> Result<Ordering> {
        Ok(match (self.to_ic(a)?, self.to_ic(b)?) {
            (Ic::Neg, Ic::Neg) | (Ic::Pos, Ic::Pos) => Ordering::Equal,
            (Ic::Neg, _) | (_, Ic::Pos) => Ordering::Less,
            (_, Ic::Neg) | (Ic::Pos, _) => Ordering::Greater,
            (Ic::Lex(p), Ic::Lex(q)) => cmp_lex(&p, &q),
            (Ic::Dense(r, c), Ic::Dense(s, d)) => r.cmp(&s).then(c.cmp(&d)),
            _ => unreachable!(),
        })
    }

    /// `Greater` when `g` lies in the left set of `a`, `Less` otherwise.
    pub fn cmp_cut_elem(&self, a: &Cut, g: &Elem) -> Result<Ordering> {
        let inside = match self.to_ic(a)? {
            Ic::Neg => false,
            Ic::Pos => true,
            Ic::Lex(p) => g.0[..p.len()] <= p[..],
            Ic::Dense(r, c) => g.0[0] < r || (g.0[0] == r && c),
        };
        Ok(if inside {
            Ordering::Greater
        } else {
            Ordering::Less
        })
    }

    pub fn cut_le(&self, a: &Cut, b: &Cut) -> Result<bool> {
        Ok(self.cmp_cut(a, b)? != Ordering::Greater)
    }

    pub fn cut_lt(&self, a: &Cut, b: &Cut) -> Result<bool> {
        Ok(self.cmp_cut(a, b)? == Ordering::Less)
    }

    pub fn max_cut(&self, a: &Cut, b: &Cut) -> Result<Cut> {
        Ok(if self.cut_le(a, b)? {
            b.clone()
        } else {
            a.clone()
        })
    }

    /// `{l + g : l < a, g < b}^+`.
    pub fn left_sum(&self, a: &Cut, b: &Cut) -> Result<Cut> {
        let r = match (self.to_ic(a)?, self.to_ic(b)?) {
            (Ic::Neg, _) | (_, Ic::Neg) => Ic::Neg,
            (Ic::Pos, _) | (_, Ic::Pos) => Ic::Pos,
            (Ic::Lex(p), Ic::Lex(q)) => Ic::Lex(add_v(&p, &q)),
            (Ic::Dense(r, c), Ic::Dense(s, d)) => Ic::Dense(r + s, c && d),
            _ => unreachable!(),
        };
        self.cut_of_ic(r)
    }

    /// `{l + g : l > a, g > b}^-`.
    pub fn right_sum(&self, a: &Cut, b: &Cut) -> Result<Cut> {
        let r = match (self.to_ic(a)?, self.to_ic(b)?) {
            (Ic::Pos, _) | (_, Ic::Pos) => Ic::Pos,
            (Ic::Neg, _) | (_, Ic::Neg) => Ic::Neg,
            (Ic::Lex(p), Ic::Lex(q)) => match p.len().cmp(&q.len()) {
                Ordering::Less => Ic::Lex(add_v(&p, &q)),
                Ordering::Greater => Ic::Lex(add_v(&p, &q)),
                Ordering::Equal => Ic::Lex(add_v(&add_v(&p, &q), &self.unit(p.len()))),
            },
            (Ic::Dense(r, c), Ic::Dense(s, d)) => {
                let t = r + s;
                if self.right_closed(&r, c) && self.right_closed(&s, d) {
                    Ic::Dense(t, false)
                } else {
                    Ic::Dense(t, self.in_dense(&t))
                }
            }
            _ => unreachable!(),
        };
        self.cut_of_ic(r)
    }

    /// `{l - g : l > a, g < b}^-`.
    pub fn diff(&self, a: &Cut, b: &Cut) -> Result<Cut> {
        let r = match (self.to_ic(a)?, self.to_ic(b)?) {
            (Ic::Pos, _) | (_, Ic::Neg) => Ic::Pos,
            (Ic::Neg, _) | (_, Ic::Pos) => Ic::Neg,
            (Ic::Lex(p), Ic::Lex(q)) => {
                if p.len() <= q.len() {
                    Ic::Lex(sub_v(&p, &q))
                } else {
                    let j = q.len();
                    Ic::Lex(sub_v(&sub_v(&p[..j], &q), &self.unit(j)))
                }
            }
            (Ic::Dense(r, c), Ic::Dense(s, d)) => {
                let t = r - s;
                if self.right_closed(&r, c) && d {
                    Ic::Dense(t, false)
                } else {
                    Ic::Dense(t, self.in_dense(&t))
                }
            }
            _ => unreachable!(),
        };
        self.cut_of_ic(r)
    }

    /// `(-a^R | -a^L)`.
    pub fn neg_cut(&self, a: &Cut) -> Result<Cut> {
        let r = match self.to_ic(a)? {
            Ic::Neg => Ic::Pos,
            Ic::Pos => Ic::Neg,
            Ic::Lex(p) => {
                let k = p.len();
                Ic::Lex(sub_v(
                    &p.iter().map(|x| -x).collect::<Vec<_>>(),
                    &self.unit(k),
                ))
            }
            Ic::Dense(r, c) => Ic::Dense(-r, self.right_closed(&r, c)),
        };
        self.cut_of_ic(r)
    }

    /// `g + a`, the translate of `a` by a group element.
    pub fn shift(&self, g: &Elem, a: &Cut) -> Result<Cut> {
        self.left_sum(&Cut::plus(g.clone()), a)
    }

    /// `a + n b` (side `Plus`) or `a - n b` (side `Minus`), left-associated.
    pub fn n_fold(&self, a: &Cut, b: &Cut, n: usize, sign: Side) -> Result<Cut> {
        let mut acc = self.canon(a)?;
        for _ in 0..n {
            acc = match sign {
                Side::Plus => self.left_sum(&acc, b)?,
                Side::Minus => self.diff(&acc, b)?,
            };
        }
        Ok(acc)
    }

    /// `n b`; `0 b` is the neutral element `0+`.
    pub fn n_mul(&self, b: &Cut, n: usize) -> Result<Cut> {
        if n == 0 {
            return Ok(Cut::plus(self.zero()));
        }
        self.n_fold(b, b, n - 1, Side::Plus)
    }

    /// `sup { n b : n >= 1 }` for `b > 0-`.
    pub fn z_mul(&self, b: &Cut) -> Result<Cut> {
        if self.cmp_cut(b, &Cut::minus(self.zero()))? != Ordering::Greater {
            return Err(Error::NonPositiveCut(self.fmt_cut(b)));
        }
        let r = match self.to_ic(b)? {
            Ic::Pos => Ic::Pos,
            Ic::Lex(p) => match p.iter().position(|x| !x.is_zero()) {
                None => Ic::Lex(p),
                Some(0) => Ic::Pos,
                Some(i) => Ic::Lex(alloc::vec![Q64::zero(); i]),
            },
            Ic::Dense(r, c) => {
                if r.is_positive() {
                    Ic::Pos
                } else {
                    Ic::Dense(r, c)
                }
            }
            Ic::Neg => unreachable!(),
        };
        self.cut_of_ic(r)
    }

    /// `b - b`.
    pub fn hat(&self, b: &Cut) -> Result<Cut> {
        self.diff(b, b)
    }

    /// `S^+` (or `S^-`). A finite `S` gives `(max S)^+`. An `enumerated` `S`
    /// is the strictly monotone prefix of an infinite sequence; its supremum
    /// is certified from the last half of the prefix (at least three
    /// elements): a coordinate that keeps growing over lex powers, and a
    /// constant difference or constant difference ratio over `Q`.
    pub fn set_cut(&self, s: &[Elem], side: Side, enumerated: bool) -> Result<Cut> {
        for e in s {
            self.check(e)?;
        }
        if side == Side::Minus {
            let neg: Vec<Elem> = s.iter().map(|e| e.neg()).collect();
            let c = self.set_cut(&neg, Side::Plus, enumerated)?;
            return self.neg_cut(&c);
        }
        if !enumerated {
            return Ok(match s.iter().max() {
                None => Cut::NegInf,
                Some(m) => Cut::plus(m.clone()),
            });
        }
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "enumerated set is not strictly increasing".into(),
            ));
        }
        if s.len() < 3 {
            return Err(Error::BoundExceeded(format!(
                "{} enumerated elements cannot certify a supremum",
                s.len()
            )));
        }
        let w = &s[s.len() - (s.len() / 2).max(3)..];
        let r = if self.is_dense() {
            let v: Vec<Q64> = w.iter().map(|e| e.0[0]).collect();
            let d: Vec<Q64> = v.windows(2).map(|x| x[1] - x[0]).collect();
            let ratios: Vec<Q64> = d.windows(2).map(|x| x[1] / x[0]).collect();
            let rho = ratios[0];
            if ratios.iter().any(|x| *x != rho) {
                return Err(Error::BoundExceeded(
                    "enumerated set has no stable difference ratio".into(),
                ));
            }
            if rho >= Q64::one() {
                Ic::Pos
            } else {
                let last = *v.last().unwrap();
                let dl = *d.last().unwrap();
                Ic::Dense(last + dl * rho / (Q64::one() - rho), false)
            }
        } else {
            let n = self.rank();
            let i = (0..n)
                .find(|&i| w.iter().any(|e| e.0[i] != w[0].0[i]))
                .unwrap();
            // Coordinates before `i` are constant on the window, so `i` is
            // nondecreasing there. It must move on the window and take three
            // values over the whole sequence under the same prefix.
            let pre = &w[0].0[..i];
            let mut vals: Vec<Q64> = s
                .iter()
                .filter(|e| &e.0[..i] == pre)
                .map(|e| e.0[i])
                .collect();
            vals.dedup();
            if vals.len() < 3 {
                return Err(Error::BoundExceeded(
                    "no coordinate grows steadily in the enumerated set".into(),
                ));
            }
            if i == 0 {
                Ic::Pos
            } else {
                Ic::Lex(w.last().unwrap().0[..i].to_vec())
            }
        };
        self.cut_of_ic(r)
    }

    /// An element strictly between two cuts, if one is found among simple
    /// candidates.
    pub fn witness_between(&self, lo: &Cut, hi: &Cut) -> Result<Option<Elem>> {
        let mut cands: Vec<Elem> = Vec::new();
        let n = self.rank();
        let q = self.quantum();
        for c in [self.to_ic(lo)?, self.to_ic(hi)?] {
            match c {
                Ic::Lex(p) => {
                    let k = p.len();
                    let mut up = add_v(&p, &self.unit(k));
                    up.resize(n, Q64::zero());
                    let mut at = p.clone();
                    at.resize(n, Q64::zero());
                    cands.push(Elem(up));
                    cands.push(Elem(at));
                }
                Ic::Dense(r, _) => {
                    let fl = (r / q).floor() * q;
                    for x in [
                        r,
                        fl,
                        fl + q,
                        fl - q,
                        fl + q + q,
                        r + Q64::one(),
                        r - Q64::one(),
                    ] {
                        cands.push(Elem::scalar(x));
                    }
                }
                _ => {}
            }
        }
        if let (Ic::Dense(r, _), Ic::Dense(s, _)) = (self.to_ic(lo)?, self.to_ic(hi)?) {
            let mid = ((r + s) / Q64::from_integer(2) / q).floor() * q;
            cands.push(Elem::scalar(mid));
        }
        cands.push(self.zero());
        for c in cands {
            if self.contains(&c)
                && self.cmp_cut_elem(lo, &c)? == Ordering::Less
                && self.cmp_cut_elem(hi, &c)? == Ordering::Greater
            {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    pub fn fmt_cut(&self, c: &Cut) -> String {
        let sign = |s: &Side| if *s == Side::Plus { "+" } else { "-" };
        match c {
            Cut::NegInf => "-inf".into(),
            Cut::PosInf => "+inf".into(),
            Cut::Principal(e, s) => format!("{}{}", self.fmt_elem(e), sign(s)),
            Cut::Sub(e, k, s) => format!("sub({},{}){}", self.fmt_elem(e), k, sign(s)),
            Cut::Gap(q) => format!("gap({})", fmt_q(q)),
        }
    }
}
