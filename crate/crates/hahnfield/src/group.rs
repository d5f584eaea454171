//! Computable ordered abelian groups embedded in `Q^n`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q64 = Ratio<i64>;

/// A group element: an exact rational vector. The derived order is
/// lexicographic, which is the group order for every descriptor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub Vec<Q64>);

impl Elem {
    pub fn scalar(q: Q64) -> Self {
        Elem(vec![q])
    }

    pub fn int(n: i64) -> Self {
        Elem(vec![Q64::from_integer(n)])
    }

    pub fn ints(v: &[i64]) -> Self {
        Elem(v.iter().map(|&n| Q64::from_integer(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        self.0
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.0
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
    }

    /// Index of the first nonzero coordinate.
    pub fn lead(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Elem) -> Elem {
        Elem(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        Elem(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Elem {
        Elem(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, n: i64) -> Elem {
        let n = Q64::from_integer(n);
        Elem(self.0.iter().map(|a| a * n).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Integers,
    /// `Z^n` with the lexicographic order.
    LexPower(usize),
    /// `Z[1/p]` with denominators bounded by `p^max_depth`. Cut arithmetic
    /// treats it as the dense group `Z[1/p^inf]`.
    PDivisible {
        p: u64,
        max_depth: u32,
    },
    /// The subgroup of `Q` generated by finitely many positive rationals.
    Rational(Vec<Q64>),
}

fn q_gcd(a: Q64, b: Q64) -> Q64 {
    let l = a.denom().lcm(b.denom());
    let x = a.numer() * (l / a.denom());
    let y = b.numer() * (l / b.denom());
    Q64::new(x.gcd(&y), l)
}

impl Group {
    pub fn rank(&self) -> usize {
        match self {
            Group::LexPower(n) => *n,
            _ => 1,
        }
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![Q64::zero(); self.rank()])
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, Group::PDivisible { .. })
    }

    /// Smallest positive element of a one-dimensional discrete group, or the
    /// step of the last coordinate of a lex power.
    pub fn step(&self) -> Option<Q64> {
        match self {
            Group::Integers | Group::LexPower(_) => Some(Q64::one()),
            Group::Rational(gens) => gens.iter().copied().reduce(q_gcd),
            Group::PDivisible { .. } => None,
        }
    }

    /// Finest element resolution of a `PDivisible` group.
    pub fn quantum(&self) -> Q64 {
        match self {
            Group::PDivisible { p, max_depth } => Q64::new(1, (*p as i64).pow(*max_depth)),
            _ => self.step().unwrap(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Group::LexPower(0) => Err(Error::Invalid("lex power of rank 0".into())),
            Group::PDivisible { p, .. } if !is_prime(*p) => {
                Err(Error::Invalid(format!("{p} is not prime")))
            }
            Group::Rational(g) => {
                if g.is_empty() || g.iter().any(|q| !q.is_positive()) {
                    return Err(Error::Invalid("generators must be positive".into()));
                }
                let mut s = g.clone();
                s.sort();
                s.dedup();
                if s.len() != g.len() {
                    return Err(Error::Invalid("generators must be distinct".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.check(e).is_ok()
    }

    pub fn check(&self, e: &Elem) -> Result<()> {
        if e.0.len() != self.rank() {
            return Err(Error::Invalid(format!(
                "element of rank {} in a group of rank {}",
                e.0.len(),
                self.rank()
            )));
        }
        match self {
            Group::Integers | Group::LexPower(_) => {
                if e.0.iter().all(|c| c.is_integer()) {
                    Ok(())
                } else {
                    Err(Error::Invalid("coordinates must be integers".into()))
                }
            }
            Group::PDivisible { p, max_depth } => {
                let mut d = *e.0[0].denom();
                let mut depth = 0u32;
                while d % (*p as i64) == 0 {
                    d /= *p as i64;
                    depth += 1;
                }
                if d != 1 {
                    Err(Error::Invalid(format!(
                        "denominator of {} is not a power of {p}",
                        e.0[0]
                    )))
                } else if depth > *max_depth {
                    Err(Error::BoundExceeded(format!(
                        "denominator {} deeper than {p}^{max_depth}",
                        e.0[0].denom()
                    )))
                } else {
                    Ok(())
                }
            }
            Group::Rational(_) => {
                if (e.0[0] / self.step().unwrap()).is_integer() {
                    Ok(())
                } else {
                    Err(Error::Invalid(format!("{} is not in the group", e.0[0])))
                }
            }
        }
    }

    pub fn add_elem(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        let s = a.add(b);
        self.check(&s)?;
        Ok(s)
    }

    pub fn cmp_elem(&self, a: &Elem, b: &Elem) -> Ordering {
        a.cmp(b)
    }

    /// The first `count` elements of `offset + <gens>` in increasing order.
    pub fn monoid_enumerate(
        &self,
        gens: &[Elem],
        offset: &Elem,
        count: usize,
        max_count: usize,
    ) -> Result<Vec<Elem>> {
        if count > max_count {
            return Err(Error::BoundExceeded(format!(
                "{count} grid points requested, maximum is {max_count}"
            )));
        }
        self.check(offset)?;
        for g in gens {
            self.check(g)?;
            if !g.is_positive() {
                return Err(Error::Invalid("monoid generators must be positive".into()));
            }
        }
        let mut out = Vec::with_capacity(count);
        let mut frontier = BTreeSet::new();
        frontier.insert(offset.clone());
        while out.len() < count {
            let Some(e) = frontier.pop_first() else { break };
            for g in gens {
                frontier.insert(e.add(g));
            }
            out.push(e);
        }
        Ok(out)
    }

    /// All non-negative exponent vectors `n` with `sum n_i gens_i = target`.
    ///
    /// Generators are grouped by their leading coordinate; within a group the
    /// leading coordinate of the remainder bounds every exponent, and the last
    /// generator of the group is solved exactly. Searched exponents above
    /// `cap` raise `BoundExceeded`.
    pub fn monoid_decompose(
        &self,
        gens: &[Elem],
        target: &Elem,
        cap: u32,
    ) -> Result<Vec<Vec<u32>>> {
        for g in gens {
            if !g.is_positive() {
                return Err(Error::Invalid("monoid generators must be positive".into()));
            }
        }
        if target.0.len() != self.rank() {
            return Err(Error::Invalid("target rank mismatch".into()));
        }
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by_key(|&i| gens[i].lead().unwrap());
        let mut out = Vec::new();
        let mut cur = vec![0u32; gens.len()];
        decompose_rec(gens, &order, 0, target.clone(), &mut cur, cap, &mut out)?;
        out.sort();
        Ok(out)
    }

    /// Membership of `target` in the monoid `<gens>`.
    pub fn in_monoid(&self, gens: &[Elem], target: &Elem, cap: u32) -> Result<bool> {
        if target.is_zero() {
            return Ok(true);
        }
        if !target.is_positive() {
            return Ok(false);
        }
        Ok(!self.monoid_decompose(gens, target, cap)?.is_empty())
    }
}

fn decompose_rec(
    gens: &[Elem],
    order: &[usize],
    pos: usize,
    rem: Elem,
    cur: &mut Vec<u32>,
    cap: u32,
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    if pos == order.len() {
        if rem.is_zero() {
            out.push(cur.clone());
        }
        return Ok(());
    }
    let gi = order[pos];
    let g = &gens[gi];
    let l = g.lead().unwrap();
    // coordinates before this class can no longer change
    if rem.0[..l].iter().any(|c| !c.is_zero()) {
        return Ok(());
    }
    let r = rem.0[l];
    if r.is_negative() {
        return Ok(());
    }
    let last_in_class = pos + 1 == order.len() || gens[order[pos + 1]].lead().unwrap() != l;
    let quot = r / g.0[l];
    if last_in_class {
        if !quot.is_integer() {
            return Ok(());
        }
        let n = quot.to_integer();
        cur[gi] = u32::try_from(n).map_err(|_| Error::BoundExceeded("exponent overflow".into()))?;
        let next = rem.sub(&g.scale(n));
        decompose_rec(gens, order, pos + 1, next, cur, cap, out)?;
        cur[gi] = 0;
        return Ok(());
    }
    let bound = quot.floor().to_integer();
    if bound > cap as i64 {
        return Err(Error::BoundExceeded(format!(
            "monoid decomposition exponent bound {bound} exceeds cap {cap}"
        )));
    }
    for n in 0..=bound {
        cur[gi] = n as u32;
        let next = rem.sub(&g.scale(n));
        decompose_rec(gens, order, pos + 1, next, cur, cap, out)?;
    }
    cur[gi] = 0;
    Ok(())
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

pub fn fmt_q(q: &Q64) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Group {
    pub fn fmt_elem(&self, e: &Elem) -> String {
        if let Group::LexPower(_) = self {
            let parts: Vec<String> = e.0.iter().map(fmt_q).collect();
            format!("({})", parts.join(","))
        } else {
            fmt_q(&e.0[0])
        }
    }

    pub fn literal(&self) -> String {
        match self {
            Group::Integers => "Z".into(),
            Group::LexPower(n) => format!("Z^{n}lex"),
            Group::PDivisible { p, max_depth } => format!("Z[1/{p}]^{max_depth}"),
            Group::Rational(g) => {
                let parts: Vec<String> = g.iter().map(fmt_q).collect();
                format!("Q<{}>", parts.join(","))
            }
        }
    }
}
