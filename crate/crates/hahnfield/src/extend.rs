//! Extending a tower of complements: pseudo-Cauchy balls, quotients
//! `d / c^k` split at a cut, normal forms of sums `r / (1 + a)`, the
//! extension ring over a pseudo-limit, the multiplicativity criterion for
//! algebraic limits, Hensel lifting and the Artin-Schreier `q` polynomial.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cut::{Cut, Side};
use crate::error::{Error, Result};
use crate::factor::FactorSet;
use crate::field::{Coeff, Field};
use crate::group::{Elem, Group, Q64};
use crate::series::{Ambient, Config, Series};
use crate::tower::{in_complement, mu, split_at};

// ---------------------------------------------------------------------------
// pseudo-Cauchy sequences

/// A materialized sequence `a_start, a_(start+1), ...`, optionally with a
/// declared limit.
#[derive(Clone, Debug)]
pub struct PcSeq {
    pub start: usize,
    pub terms: Vec<Series>,
    pub limit: Option<Series>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcReport {
    /// `(nu, v(a_(nu+1) - a_nu))`; `None` is the valuation of zero.
    pub diffs: Vec<(usize, Option<Elem>)>,
    /// First index from which the differences strictly increase.
    pub threshold: Option<usize>,
    /// `(nu, v(limit - a_nu))` when a limit is declared.
    pub limit_values: Vec<(usize, Option<Elem>)>,
    pub limit_ok: Option<bool>,
    pub passed: bool,
}

/// Fewest difference values accepted as evidence of eventual increase.
const MIN_TAIL: usize = 3;

impl PcSeq {
    pub fn new(start: usize, terms: Vec<Series>) -> PcSeq {
        PcSeq {
            start,
            terms,
            limit: None,
        }
    }

    pub fn with_limit(mut self, limit: Series) -> PcSeq {
        self.limit = Some(limit);
        self
    }

    /// `a_nu = f(nu)` for `start <= nu < start + n`.
    pub fn from_fn(start: usize, n: usize, f: impl Fn(usize) -> Result<Series>) -> Result<PcSeq> {
        let terms = (start..start + n).map(f).collect::<Result<Vec<_>>>()?;
        Ok(PcSeq::new(start, terms))
    }

    pub fn term(&self, nu: usize) -> Option<&Series> {
        nu.checked_sub(self.start).and_then(|i| self.terms.get(i))
    }

    pub fn end(&self) -> usize {
        self.start + self.terms.len()
    }
}

/// Strict increase of the successive differences, and of `v(limit - a_nu)`
/// when a limit is declared. "Eventually" means: from the first index after
/// which every materialized value is nonzero and strictly increasing, with
/// at least three values.
pub fn pc_verify(seq: &PcSeq) -> Result<PcReport> {
    let mut diffs = Vec::new();
    for (i, w) in seq.terms.windows(2).enumerate() {
        diffs.push((seq.start + i, w[1].sub(&w[0]).valuation()?));
    }
    let threshold = increasing_tail(&diffs);
    let mut limit_values = Vec::new();
    let mut limit_ok = None;
    if let Some(l) = &seq.limit {
        for (i, a) in seq.terms.iter().enumerate() {
            limit_values.push((seq.start + i, l.sub(a).valuation()?));
        }
        let ok = limit_values.iter().all(|x| x.1.is_some())
            && limit_values.windows(2).all(|w| w[0].1 < w[1].1);
        limit_ok = Some(ok);
    }
    let passed = threshold.is_some() && limit_ok != Some(false);
    Ok(PcReport {
        diffs,
        threshold,
        limit_values,
        limit_ok,
        passed,
    })
}

fn increasing_tail(vals: &[(usize, Option<Elem>)]) -> Option<usize> {
    let mut i = vals.len();
    while i > 0 && vals[i - 1].1.is_some() && (i == vals.len() || vals[i - 1].1 < vals[i].1) {
        i -= 1;
    }
    (vals.len() - i >= MIN_TAIL).then(|| vals[i].0)
}

/// The cut `{v(a - a_nu)}^+`, from the declared limit or, without one, from
/// the differences past the threshold (which have the same values
/// eventually).
pub fn ball_of(seq: &PcSeq) -> Result<Cut> {
    let rep = pc_verify(seq)?;
    let Some(th) = rep.threshold else {
        return Err(Error::NotPseudoCauchy(
            "differences do not increase strictly".into(),
        ));
    };
    let g = seq.terms[0].group();
    let vals: Vec<Elem> = if seq.limit.is_some() {
        if rep.limit_ok != Some(true) {
            return Err(Error::NotPseudoCauchy(
                "v(limit - a_nu) does not increase strictly".into(),
            ));
        }
        rep.limit_values
            .into_iter()
            .filter(|x| x.0 >= th)
            .map(|x| x.1.unwrap())
            .collect()
    } else {
        rep.diffs
            .into_iter()
            .filter(|x| x.0 >= th)
            .map(|x| x.1.unwrap())
            .collect()
    };
    g.set_cut(&vals, Side::Plus, true)
}

// ---------------------------------------------------------------------------
// quotients

/// `Z mu(a)`, with the neutral cut `0+` for `a = 0`.
pub fn zmu(a: &Series) -> Result<Cut> {
    let g = a.group();
    if a.is_finite_zero() {
        return Ok(Cut::plus(g.zero()));
    }
    g.z_mul(&mu(a)?)
}

/// `mu(r) + Z mu(a)`.
pub fn certificate(r: &Series, a: &Series) -> Result<Cut> {
    r.group().left_sum(&mu(r)?, &zmu(a)?)
}

/// `sum r_i / (1 + a_i)` with finite `r_i`, `a_i` and `v(a_i) > 0`.
#[derive(Clone, Debug)]
pub struct QuotientElem {
    pub summands: Vec<(Series, Series)>,
    /// Set by [`normalize_sum`] only.
    pub normal: bool,
}

impl QuotientElem {
    pub fn new(summands: Vec<(Series, Series)>) -> Result<QuotientElem> {
        for (r, a) in &summands {
            if !r.is_finite() || !a.is_finite() {
                return Err(Error::Invalid(
                    "quotient summands must have finite support".into(),
                ));
            }
            if let Some(v) = a.valuation()? {
                if !v.is_positive() {
                    return Err(Error::Invalid(
                        "denominators must be 1 + a with v(a) > 0".into(),
                    ));
                }
            }
        }
        Ok(QuotientElem {
            summands,
            normal: false,
        })
    }

    pub fn value(&self, amb: &Arc<Ambient>) -> Result<Series> {
        let mut s = Series::zero(amb);
        for (r, a) in &self.summands {
            let t = if a.is_finite_zero() {
                r.clone()
            } else {
                r.mul(&Series::one(amb).add(a).invert()?)
            };
            s = s.add(&t);
        }
        Ok(s)
    }

    /// Every summand satisfies `mu(r) + Z mu(a) <= gamma`.
    pub fn certified(&self, gamma: &Cut) -> Result<bool> {
        for (r, a) in &self.summands {
            if !r.group().cut_le(&certificate(r, a)?, gamma)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `d / c^k = b1 + b2` with `b1` a certified quotient and `v(b2) > gamma`.
#[derive(Clone, Debug)]
pub struct QuotientSplit {
    pub b1: QuotientElem,
    pub b2: Series,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub certified: bool,
    pub tail_above: bool,
    pub reassembles: bool,
}

impl SplitCheck {
    pub fn passed(&self) -> bool {
        self.certified && self.tail_above && self.reassembles
    }
}

fn binomial(field: &Field, n: u64, k: u64) -> Result<Coeff> {
    let b: BigInt = num_integer::binomial(BigInt::from(n), BigInt::from(k));
    field.from_q(&BigRational::from_integer(b))
}

/// Splits `d / c^k` at `gamma` for finite `d`, `c`.
///
/// With `c = m (1 - e)` for its leading monomial `m`, the recursion runs on
/// the length of `e`: the part of `d` below `gamma - Z mu(e)` is emitted
/// over `(1 - e)^k`; the rest is expanded in powers of the top monomial of
/// `e`, cut off once the valuations pass `gamma`, and each piece recurses
/// with the shorter remainder of `e`.
pub fn split_quotient(d: &Series, c: &Series, k: u32, gamma: &Cut) -> Result<QuotientSplit> {
    let amb = d.ambient().clone();
    if !d.is_finite() || !c.is_finite() {
        return Err(Error::Invalid(
            "split_quotient needs finite-support inputs".into(),
        ));
    }
    if k == 0 {
        return Err(Error::Invalid("the exponent must be positive".into()));
    }
    let g = &amb.group;
    let gamma = g.canon(gamma)?;
    let Some((o, c0)) = c.leading_term()? else {
        return Err(Error::ZeroDivisor);
    };
    let m_inv = Series::monomial(&amb, o, c0).invert()?;
    let eps = Series::one(&amb).sub(&m_inv.mul(c));
    let d0 = d.mul(&m_inv.pow(k));
    let mut out = Vec::new();
    split_rec(&amb, &d0, &eps, k as u64, &gamma, &mut out)?;

    // summands sharing a denominator are added up
    let mut by_den: Vec<(Vec<(Elem, Coeff)>, Series)> = Vec::new();
    for (r, a) in out {
        let key = a.terms().unwrap().to_vec();
        match by_den.iter_mut().find(|x| x.0 == key) {
            Some(x) => x.1 = x.1.add(&r),
            None => by_den.push((key, r)),
        }
    }
    by_den.sort_by_key(|x| x.0.len());
    let mut summands = Vec::new();
    for (key, r) in by_den {
        if !r.is_finite_zero() {
            summands.push((r, Series::from_terms(&amb, key)?));
        }
    }
    let b1 = QuotientElem::new(summands)?;
    let b2 = d.mul(&c.pow(k).invert()?).sub(&b1.value(&amb)?);
    Ok(QuotientSplit { b1, b2 })
}

fn split_rec(
    amb: &Arc<Ambient>,
    d: &Series,
    eps: &Series,
    k: u64,
    gamma: &Cut,
    out: &mut Vec<(Series, Series)>,
) -> Result<()> {
    if d.is_finite_zero() {
        return Ok(());
    }
    let g = &amb.group;
    if eps.is_finite_zero() {
        let r = d.truncate(gamma)?;
        if !r.is_finite_zero() {
            out.push((r, Series::zero(amb)));
        }
        return Ok(());
    }
    let z = g.z_mul(&mu(eps)?)?;
    let psi = g.diff(gamma, &z)?;
    let (d1, d2) = split_at(d, &psi)?;
    if !d1.is_finite_zero() {
        let a = Series::one(amb)
            .sub(eps)
            .pow(k as u32)
            .sub(&Series::one(amb));
        out.push((d1, a));
    }
    let Some(v2) = d2.valuation()? else {
        return Ok(());
    };
    let t = eps.terms().unwrap();
    let (th, top_c) = t.last().unwrap().clone();
    let top = Series::monomial(amb, th.clone(), top_c);
    let rest = Series::from_terms(amb, t[..t.len() - 1].to_vec())?;
    let cap = amb.cfg.monoid_cap as usize;
    let mut n0 = 0;
    while g.cmp_cut_elem(gamma, &v2.add(&th.scale(n0 as i64)))? == Ordering::Greater {
        n0 += 1;
        if n0 > cap {
            return Err(Error::BoundExceeded(format!(
                "more than {cap} expansion terms below the cut"
            )));
        }
    }
    let mut piece = d2;
    for i in 0..n0 as u64 {
        let b = binomial(&amb.field, i + k - 1, i)?;
        if !amb.field.is_zero(&b) {
            split_rec(amb, &piece.scale(&b), &rest, k + i, gamma, out)?;
        }
        piece = piece.mul(&top);
    }
    Ok(())
}

impl QuotientSplit {
    /// The three postconditions, on the first `depth` grid points.
    pub fn verify(
        &self,
        d: &Series,
        c: &Series,
        k: u32,
        gamma: &Cut,
        depth: usize,
    ) -> Result<SplitCheck> {
        let amb = d.ambient();
        let g = &amb.group;
        let certified = self.b1.certified(gamma)?;
        let mut tail_above = true;
        for (e, _) in self.b2.prefix(depth)? {
            if g.cmp_cut_elem(gamma, &e)? == Ordering::Greater {
                tail_above = false;
            }
        }
        let back = self.b1.value(amb)?.add(&self.b2).mul(&c.pow(k));
        let reassembles = back.eq_prefix(d, depth)?;
        Ok(SplitCheck {
            certified,
            tail_above,
            reassembles,
        })
    }
}

fn mumu(g: &Group, x: &(Series, Series), y: &(Series, Series), gamma: &Cut) -> Result<bool> {
    let m = g.max_cut(&mu(&x.0)?, &mu(&y.0)?)?;
    let s = g.left_sum(&g.left_sum(&m, &zmu(&x.1)?)?, &zmu(&y.1)?)?;
    g.cut_le(&s, gamma)
}

/// `r/(1+a) + r'/(1+a') = (r(1+a') + r'(1+a)) / ((1+a)(1+a'))`.
fn combine(amb: &Arc<Ambient>, x: &(Series, Series), y: &(Series, Series)) -> (Series, Series) {
    let one = Series::one(amb);
    let r = x.0.mul(&one.add(&y.1)).add(&y.0.mul(&one.add(&x.1)));
    let a = x.1.add(&y.1).add(&x.1.mul(&y.1));
    (r, a)
}

/// Rewrites a certified sum so that `v(r_1) < ... < v(r_k)`,
/// `Z mu(a_1) > ... > Z mu(a_k)` and `v(r_(i+1)) > mu(r_i) + Z mu(a_i)`.
///
/// Pairs whose combined certificate still fits under `gamma` are merged.
/// Otherwise, walking down from the smallest `Z mu(a)`, each `r_i` is split
/// at `mu(r_(i-1)) + Z mu(a_(i-1))` and its lower part moves into the
/// neighbour. A merge or a vanishing part restarts the pass.
pub fn normalize_sum(x: &QuotientElem, gamma: &Cut, amb: &Arc<Ambient>) -> Result<QuotientElem> {
    let g = &amb.group;
    if !x.certified(gamma)? {
        return Err(Error::Invalid(
            "summands are not certified for the cut".into(),
        ));
    }
    let mut s: Vec<(Series, Series)> = x
        .summands
        .iter()
        .filter(|p| !p.0.is_finite_zero())
        .cloned()
        .collect();
    'outer: loop {
        let mut merged = true;
        while merged {
            merged = false;
            'pairs: for i in 0..s.len() {
                for j in i + 1..s.len() {
                    if mumu(g, &s[i], &s[j], gamma)? {
                        let y = s.remove(j);
                        s[i] = combine(amb, &s[i], &y);
                        merged = true;
                        break 'pairs;
                    }
                }
            }
            s.retain(|p| !p.0.is_finite_zero());
        }
        if s.len() <= 1 {
            break;
        }
        let mut keyed = Vec::new();
        for p in s.drain(..) {
            keyed.push((zmu(&p.1)?, p));
        }
        keyed.sort_by(|a, b| g.cmp_cut(&b.0, &a.0).unwrap_or(Ordering::Equal));
        s = keyed.into_iter().map(|x| x.1).collect();
        for i in (1..s.len()).rev() {
            if mumu(g, &s[i], &s[i - 1], gamma)? {
                let y = s.remove(i);
                s[i - 1] = combine(amb, &s[i - 1], &y);
                s.retain(|p| !p.0.is_finite_zero());
                continue 'outer;
            }
            let theta = certificate(&s[i - 1].0, &s[i - 1].1)?;
            let (s1, s2) = split_at(&s[i].0, &theta)?;
            if s1.is_finite_zero() {
                continue;
            }
            let moved = (s1, s[i].1.clone());
            let r2 = combine(amb, &moved, &s[i - 1]);
            s[i].0 = s2;
            s[i - 1] = r2;
            if s[i].0.is_finite_zero() || s[i - 1].0.is_finite_zero() {
                s.retain(|p| !p.0.is_finite_zero());
                continue 'outer;
            }
        }
        break;
    }
    let out = QuotientElem {
        summands: s,
        normal: true,
    };
    if !normal_chains(&out, g)? {
        return Err(Error::Invalid("normal form chains do not hold".into()));
    }
    Ok(out)
}

/// The three chain conditions of a normal form.
pub fn normal_chains(x: &QuotientElem, g: &Group) -> Result<bool> {
    for w in x.summands.windows(2) {
        let (v1, v2) = (w[0].0.valuation()?, w[1].0.valuation()?);
        let (Some(v1), Some(v2)) = (v1, v2) else {
            return Ok(false);
        };
        if v1 >= v2 {
            return Ok(false);
        }
        if !g.cut_lt(&zmu(&w[1].1)?, &zmu(&w[0].1)?)? {
            return Ok(false);
        }
        if g.cmp_cut_elem(&certificate(&w[0].0, &w[0].1)?, &v2)? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// the extension ring over a pseudo-limit

/// `max_n (mu(c_n) + n ball)` over the nonzero coefficients.
pub fn mu_poly(coeffs: &[Series], ball: &Cut) -> Result<Cut> {
    let Some(first) = coeffs.first() else {
        return Ok(Cut::NegInf);
    };
    let g = first.group();
    let mut best = Cut::NegInf;
    for (n, c) in coeffs.iter().enumerate() {
        if c.is_zero()? {
            continue;
        }
        let m = g.left_sum(&mu(c)?, &g.n_mul(ball, n)?)?;
        best = g.max_cut(&best, &m)?;
    }
    Ok(best)
}

/// `sum c_n a^n` lies in the extended complement at `gamma` iff each `c_n`
/// lies in the complement at `gamma - n ball`.
pub fn ext_membership(coeffs: &[Series], ball: &Cut, gamma: &Cut) -> Result<bool> {
    for (n, c) in coeffs.iter().enumerate() {
        let g = c.group();
        if !in_complement(c, &g.n_fold(gamma, ball, n, Side::Minus)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A monic polynomial `b_0 + b_1 X + ... + X^m` with the ball of its root.
#[derive(Clone, Debug)]
pub struct MinPoly {
    pub coeffs: Vec<Series>,
    pub ball: Cut,
}

impl MinPoly {
    pub fn new(coeffs: Vec<Series>, ball: Cut) -> Result<MinPoly> {
        let Some(last) = coeffs.last() else {
            return Err(Error::Invalid("empty polynomial".into()));
        };
        if !last.eq_prefix(&Series::one(last.ambient()), usize::MAX)? || !last.is_finite() {
            return Err(Error::Invalid("polynomial must be monic".into()));
        }
        Ok(MinPoly { coeffs, ball })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVerdict {
    pub k: usize,
    pub cut: Cut,
    pub mu: Cut,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultReport {
    pub passed: bool,
    /// Empty when the ball is `+inf`.
    pub rows: Vec<CoeffVerdict>,
}

/// The extended family is multiplicative iff `ball = +inf` or every `b_k`
/// lies in the complement at `m ball - k ball`.
pub fn alg_mult_criterion(p: &MinPoly) -> Result<MultReport> {
    if p.ball == Cut::PosInf {
        return Ok(MultReport {
            passed: true,
            rows: Vec::new(),
        });
    }
    let g = p.coeffs[0].group();
    let m = p.degree();
    let mb = g.n_mul(&p.ball, m)?;
    let mut rows = Vec::new();
    for (k, b) in p.coeffs[..m].iter().enumerate() {
        let cut = g.n_fold(&mb, &p.ball, k, Side::Minus)?;
        let mu_b = mu(b)?;
        let passed = g.cut_le(&mu_b, &cut)?;
        rows.push(CoeffVerdict {
            k,
            cut,
            mu: mu_b,
            passed,
        });
    }
    Ok(MultReport {
        passed: rows.iter().all(|r| r.passed),
        rows,
    })
}

/// `sum c_i x^i`.
pub fn eval_poly(coeffs: &[Series], x: &Series) -> Result<Series> {
    let Some(last) = coeffs.last() else {
        return Err(Error::Invalid("empty polynomial".into()));
    };
    let mut acc = last.clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(x).add(c);
    }
    Ok(acc)
}

pub fn poly_mul(p: &[Series], q: &[Series]) -> Vec<Series> {
    let (Some(a), true) = (p.first(), !q.is_empty()) else {
        return Vec::new();
    };
    let mut out = alloc::vec![Series::zero(a.ambient()); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Hensel lifting

#[derive(Clone, Debug)]
pub struct HenselLift {
    pub root: Series,
    /// `v(p(b_k))` before each Newton step and after the last one.
    pub residuals: Vec<Option<Elem>>,
    pub grid: Vec<Elem>,
}

fn derivative(coeffs: &[Series]) -> Vec<Series> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&c.field().int(i as i64)))
        .collect()
}

fn residue(field: &Field, coeffs: &[Coeff], x: &Coeff) -> Coeff {
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

const NEWTON_STEPS: usize = 64;

/// Newton iteration from a simple residue root, each iterate cut back to
/// the first `depth` points of the grid spanned by the coefficient
/// exponents. Stops once `p(b)` vanishes on that grid.
pub fn hensel_lift(coeffs: &[Series], root: &Coeff, depth: usize) -> Result<HenselLift> {
    let Some(first) = coeffs.first() else {
        return Err(Error::Invalid("empty polynomial".into()));
    };
    let amb = first.ambient().clone();
    let (g, field) = (&amb.group, &amb.field);
    let z = g.zero();
    let mut gens = Vec::new();
    let mut res = Vec::new();
    for c in coeffs {
        let Some(t) = c.terms() else {
            return Err(Error::Invalid(
                "coefficients must have finite support".into(),
            ));
        };
        for (e, _) in t {
            if e.is_negative() {
                return Err(Error::Invalid(
                    "coefficients must lie in the valuation ring".into(),
                ));
            }
            if e.is_positive() && !gens.contains(e) {
                gens.push(e.clone());
            }
        }
        res.push(c.coeff(&z)?);
    }
    if !field.is_zero(&residue(field, &res, root)) {
        return Err(Error::Invalid(
            "not a root of the residue polynomial".into(),
        ));
    }
    let dres: Vec<Coeff> = res
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.int(i as i64)))
        .collect();
    if field.is_zero(&residue(field, &dres, root)) {
        return Err(Error::NotSimpleRoot);
    }
    let grid = g.monoid_enumerate(&gens, &z, depth.max(1), amb.cfg.horizon.max(depth))?;
    let last = grid.last().unwrap().clone();
    let dp = derivative(coeffs);
    let mut b = Series::constant(&amb, root.clone());
    let mut residuals = Vec::new();
    for _ in 0..NEWTON_STEPS {
        let r = eval_poly(coeffs, &b)?;
        let v = r.valuation()?;
        residuals.push(v.clone());
        if v.as_ref().is_none_or(|v| *v > last) {
            return Ok(HenselLift {
                root: b,
                residuals,
                grid,
            });
        }
        let step = r.mul(&eval_poly(&dp, &b)?.invert()?);
        b = b.sub(&step).restrict(&grid)?;
    }
    Err(Error::BoundExceeded(format!(
        "Newton iteration did not settle in {NEWTON_STEPS} steps"
    )))
}

// ---------------------------------------------------------------------------
// Artin-Schreier polynomials

/// `c + sum_i c_i X^(p^i)` with `c_n = 1`, over a field of characteristic
/// `p`.
#[derive(Clone, Debug)]
pub struct AdditivePoly {
    pub constant: Series,
    pub coeffs: Vec<Series>,
}

impl AdditivePoly {
    pub fn new(constant: Series, coeffs: Vec<Series>) -> Result<AdditivePoly> {
        if constant.field().characteristic() == 0 {
            return Err(Error::Invalid(
                "additive polynomials need positive characteristic".into(),
            ));
        }
        let Some(last) = coeffs.last() else {
            return Err(Error::Invalid("empty polynomial".into()));
        };
        if !last.is_finite() || !last.eq_prefix(&Series::one(last.ambient()), usize::MAX)? {
            return Err(Error::Invalid("additive polynomial must be monic".into()));
        }
        Ok(AdditivePoly { constant, coeffs })
    }

    fn p(&self) -> u64 {
        self.constant.field().characteristic()
    }

    /// `sum_i c_i x^(p^i)`.
    pub fn additive_part(&self, x: &Series) -> Series {
        let p = self.p() as u32;
        let mut acc = Series::zero(x.ambient());
        let mut xp = x.clone();
        for c in &self.coeffs {
            acc = acc.add(&c.mul(&xp));
            xp = xp.pow(p);
        }
        acc
    }

    pub fn eval(&self, x: &Series) -> Series {
        self.constant.add(&self.additive_part(x))
    }

    /// Dense coefficients `b_0 .. b_(p^n)`.
    pub fn dense(&self) -> Vec<Series> {
        let amb = self.constant.ambient();
        let p = self.p() as usize;
        let deg = p.pow(self.coeffs.len() as u32 - 1);
        let mut out = alloc::vec![Series::zero(amb); deg + 1];
        out[0] = self.constant.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = p.pow(i as u32);
            out[j] = out[j].add(c);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct QRow {
    pub nu: usize,
    pub q_value: Option<Elem>,
    pub p_value: Option<Elem>,
}

#[derive(Clone, Debug)]
pub struct AsReport {
    pub ball: Cut,
    pub q: AdditivePoly,
    /// The parts split off the coefficients and the constant.
    pub dropped: Vec<Series>,
    pub rows: Vec<QRow>,
    pub values_agree: bool,
    pub increasing: bool,
}

impl AsReport {
    pub fn passed(&self) -> bool {
        self.values_agree && self.increasing && !self.rows.is_empty()
    }
}

/// How many indices past `nu0` the `q` construction is checked on.
pub const AS_WINDOW: usize = 6;

/// Splits `c_i` at `p^n ball - p^i ball` and `c + A(a_nu0)` at `p^n ball`,
/// keeping the lower parts as `q`, and compares `v(q(a_nu - a_nu0))` with
/// `v(p(a_nu))` for `nu0 < nu <= nu0 + 6`.
pub fn artin_schreier_q(poly: &AdditivePoly, seq: &PcSeq, nu0: usize) -> Result<AsReport> {
    let ball = ball_of(seq)?;
    if ball.is_infinite() {
        return Err(Error::Invalid("the ball must be finite".into()));
    }
    let g = poly.constant.group().clone();
    let p = poly.p() as usize;
    let n = poly.coeffs.len() - 1;
    let top = g.n_mul(&ball, p.pow(n as u32))?;
    let mut qc = Vec::new();
    let mut dropped = Vec::new();
    for (i, c) in poly.coeffs.iter().enumerate() {
        if i == n {
            qc.push(c.clone());
            continue;
        }
        let cut = g.n_fold(&top, &ball, p.pow(i as u32), Side::Minus)?;
        let (b, b2) = split_at(c, &cut)?;
        qc.push(b);
        dropped.push(b2);
    }
    let Some(a0) = seq.term(nu0) else {
        return Err(Error::Invalid(format!("index {nu0} is not materialized")));
    };
    let (b, b2) = split_at(&poly.eval(a0), &top)?;
    dropped.push(b2);
    let q = AdditivePoly {
        constant: b,
        coeffs: qc,
    };
    let mut rows = Vec::new();
    for nu in nu0 + 1..=nu0 + AS_WINDOW {
        let Some(a) = seq.term(nu) else { break };
        rows.push(QRow {
            nu,
            q_value: q.eval(&a.sub(a0)).valuation()?,
            p_value: poly.eval(a).valuation()?,
        });
    }
    let values_agree = rows.iter().all(|r| r.q_value == r.p_value);
    let increasing = rows.iter().all(|r| r.q_value.is_some())
        && rows.windows(2).all(|w| w[0].q_value < w[1].q_value);
    Ok(AsReport {
        ball,
        q,
        dropped,
        rows,
        values_agree,
        increasing,
    })
}

// ---------------------------------------------------------------------------
// the characteristic-p example

/// Perfect hull of `F_p(y)` in `t` over `Z[1/p^depth]`, the sequence of
/// partial sums of `t^(-1/p) + t^(-1/p^2) + ...`, and the polynomials
/// `X^p - X - 1/t` and `X^p - X - (1/t + y)`.
#[derive(Clone, Debug)]
pub struct Wtoc {
    pub amb: Arc<Ambient>,
    pub seq: PcSeq,
    pub a_poly: AdditivePoly,
    pub b_poly: AdditivePoly,
}

pub fn wtoc_data(p: u64, depth: u32) -> Result<Wtoc> {
    let group = Group::PDivisible {
        p,
        max_depth: depth,
    };
    let field = Field::PerfectHull {
        p,
        var: "y".into(),
        max_depth: depth,
    };
    let amb = Ambient::new(group, field, FactorSet::Trivial, Config::default())?;
    let k = &amb.field;
    let one = k.one();
    let pi = p as i64;
    let seq = PcSeq::from_fn(1, depth as usize, |nu| {
        let terms = (1..=nu as u32)
            .rev()
            .map(|i| (Elem::scalar(Q64::new(-1, pi.pow(i))), one.clone()))
            .collect();
        Series::from_terms(&amb, terms)
    })?;
    let inv_t = Series::monomial(&amb, Elem::int(-1), one.clone());
    let y = Series::constant(&amb, k.var()?);
    let lin = Series::constant(&amb, k.int(-1));
    let a_poly = AdditivePoly::new(inv_t.neg(), Vec::from([lin.clone(), Series::one(&amb)]))?;
    let b_poly = AdditivePoly::new(inv_t.add(&y).neg(), Vec::from([lin, Series::one(&amb)]))?;
    Ok(Wtoc {
        amb,
        seq,
        a_poly,
        b_poly,
    })
}
