//! Towers of complements on grid series: the support cut `mu`, splitting
//! at a cut, membership, the coefficient-extraction map and an axiom
//! checker that works for any family given by its projections.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cut::{Cut, Side};
use crate::error::Result;
use crate::field::Coeff;
use crate::group::Elem;
use crate::series::Series;

/// `(supp x)^+`.
///
/// A finite series gives the cut above its largest exponent. A stream
/// prefix, or a rule-based series whose nonzero terms reach the second half
/// of its first `depth` grid points, is handed to `set_cut` as an enumerated
/// sequence and needs a stabilization certificate. A rule-based series whose
/// support stops in the first half is treated as finite.
pub fn mu(x: &Series) -> Result<Cut> {
    let g = x.group();
    if let Some(t) = x.terms() {
        let s: Vec<Elem> = t.iter().map(|p| p.0.clone()).collect();
        return g.set_cut(&s, Side::Plus, x.is_stream() && !s.is_empty());
    }
    let n = x.ambient().cfg.depth.max(6);
    let pts = x.grid_prefix(n);
    let field = x.field();
    let mut supp = Vec::new();
    let mut last = 0;
    for (i, p) in pts.iter().enumerate() {
        if !field.is_zero(&x.coeff(p)?) {
            supp.push(p.clone());
            last = i;
        }
    }
    let finite = pts.len() < n || supp.is_empty() || last < n / 2;
    g.set_cut(&supp, Side::Plus, !finite)
}

/// `x = x1 + x2` with `x1` supported in the left set of `cut` and
/// `v(x2) > cut`.
pub fn split_at(x: &Series, cut: &Cut) -> Result<(Series, Series)> {
    let x1 = x.truncate(cut)?;
    let x2 = x.sub(&x1);
    Ok((x1, x2))
}

/// `mu(x) <= cut`.
pub fn in_complement(x: &Series, cut: &Cut) -> Result<bool> {
    if let Some(b) = x.support_bound() {
        if x.group().cmp_cut(b, cut)? != Ordering::Greater {
            return Ok(true);
        }
    }
    Ok(x.group().cmp_cut(&mu(x)?, cut)? != Ordering::Greater)
}

/// `v(x) > cut`. Grid points increase, so the scan stops at the first
/// point past the cut; a rule-based series is inspected on its first
/// `depth` grid points.
pub fn in_ideal(x: &Series, cut: &Cut) -> Result<bool> {
    let g = x.group();
    if let Some(t) = x.terms() {
        return Ok(match t.first() {
            None => true,
            Some((v, _)) => g.cmp_cut_elem(cut, v)? == Ordering::Less,
        });
    }
    let field = x.field();
    for i in 0..x.ambient().cfg.depth {
        let Some(p) = x.grid_point(i) else {
            return Ok(true);
        };
        if g.cmp_cut_elem(cut, &p)? == Ordering::Less {
            return Ok(true);
        }
        if !field.is_zero(&x.coeff(&p)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A family of complements given by its projection `R -> A[cut]` along
/// `O[cut]` and its membership test.
pub trait Family {
    fn name(&self) -> String;
    fn part(&self, x: &Series, cut: &Cut) -> Result<Series>;
    fn contains(&self, x: &Series, cut: &Cut) -> Result<bool>;
}

/// Series supported in the left set of the cut.
pub struct TruncationTower;

impl Family for TruncationTower {
    fn name(&self) -> String {
        "truncation".into()
    }

    fn part(&self, x: &Series, cut: &Cut) -> Result<Series> {
        x.truncate(cut)
    }

    fn contains(&self, x: &Series, cut: &Cut) -> Result<bool> {
        in_complement(x, cut)
    }
}

/// Negative control: membership is truncation, but the projection cuts at
/// `shift + cut`.
pub struct ShiftedTower(pub Elem);

impl Family for ShiftedTower {
    fn name(&self) -> String {
        "shifted".into()
    }

    fn part(&self, x: &Series, cut: &Cut) -> Result<Series> {
        x.truncate(&x.group().shift(&self.0, cut)?)
    }

    fn contains(&self, x: &Series, cut: &Cut) -> Result<bool> {
        in_complement(x, cut)
    }
}

/// Extracts `a_g t^g` at each of the first `depth` grid points of `x` from
/// the three-way decomposition `x = x' + a_g t^g + x''` of the family.
pub fn sigma_reconstruct(fam: &dyn Family, x: &Series, depth: usize) -> Result<Series> {
    let amb = x.ambient();
    let mut terms: Vec<(Elem, Coeff)> = Vec::new();
    for g in x.grid_prefix(depth) {
        let lower = fam.part(x, &Cut::minus(g.clone()))?;
        let rest = x.sub(&lower);
        let mid = fam.part(&rest, &Cut::plus(g.clone()))?;
        let a = mid.coeff(&g)?;
        if !amb.field.is_zero(&a) {
            terms.push((g, a));
        }
    }
    Series::from_terms(amb, terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub sample: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Sample data for `check_tower_axioms`.
pub struct TowerSamples {
    pub series: Vec<Series>,
    pub cuts: Vec<Cut>,
    pub elems: Vec<Elem>,
    pub depth: usize,
}

fn is_monomial_at(x: &Series, g: &Elem, depth: usize) -> Result<bool> {
    Ok(x.prefix(depth)?.iter().all(|(e, _)| e == g))
}

struct Checker<'a> {
    out: Vec<AxiomCheck>,
    fam: &'a dyn Family,
}

impl Checker<'_> {
    fn record(
        &mut self,
        axiom: &'static str,
        sample: String,
        ok: Result<bool>,
        witness: impl FnOnce() -> String,
    ) {
        let (passed, witness) = match ok {
            Ok(true) => (true, None),
            Ok(false) => (false, Some(witness())),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.out.push(AxiomCheck {
            axiom,
            sample,
            passed,
            witness,
        });
    }
}

/// Checks the tower axioms and the derived identities on the samples.
/// Series are paired cyclically with cuts and elements.
pub fn check_tower_axioms(fam: &dyn Family, s: &TowerSamples) -> Vec<AxiomCheck> {
    let mut ck = Checker {
        out: Vec::new(),
        fam,
    };
    let Some(x0) = s.series.first() else {
        return ck.out;
    };
    let amb = x0.ambient().clone();
    let g = &amb.group;
    let n = s.depth;
    let lit = |x: &Series| x.literal(8).unwrap_or_else(|e| format!("<{e}>"));
    let cl = |c: &Cut| g.fmt_cut(c);
    let two = amb.field.int(2);
    let m = s.series.len();
    for (i, x) in s.series.iter().enumerate() {
        let y = &s.series[(i + 1) % m];
        let lam = &s.cuts[i % s.cuts.len()];
        let gam = &s.cuts[(i * 7 + 3) % s.cuts.len()];
        let e = &s.elems[i % s.elems.len()];
        let tag = format!("x={}, cut={}", lit(x), cl(lam));

        // subspace
        let ok = (|| {
            let z = ck.fam.part(x, lam)?.add(&ck.fam.part(y, lam)?.scale(&two));
            ck.fam.contains(&z, lam)
        })();
        ck.record("subspace", tag.clone(), ok, || format!("y={}", lit(y)));

        // direct sum
        let mut wit = String::new();
        let ok = (|| {
            let x1 = ck.fam.part(x, lam)?;
            let x2 = x.sub(&x1);
            if !ck.fam.contains(&x1, lam)? {
                wit = format!("projection {} not in complement", lit(&x1));
                return Ok(false);
            }
            if !in_ideal(&x2, lam)? {
                wit = format!("remainder {} has value below the cut", lit(&x2));
                return Ok(false);
            }
            if !ck.fam.part(&x1, lam)?.eq_prefix(&x1, n)? {
                wit = "projection is not idempotent".into();
                return Ok(false);
            }
            Ok(true)
        })();
        ck.record("direct-sum", tag.clone(), ok, || wit);

        // monomials
        let ok = (|| {
            let t = Series::monomial(&amb, e.clone(), two.clone());
            ck.fam.contains(&t, &Cut::plus(e.clone()))
        })();
        ck.record("monomial", format!("g={}", g.fmt_elem(e)), ok, String::new);

        // monotone, both directions
        let mut wit = String::new();
        let ok = (|| {
            let (lo, hi) = if g.cut_le(gam, lam)? {
                (gam, lam)
            } else {
                (lam, gam)
            };
            if !ck.fam.contains(&ck.fam.part(x, lo)?, hi)? {
                wit = format!("part at {} not inside {}", cl(lo), cl(hi));
                return Ok(false);
            }
            if g.cut_lt(lo, hi)? {
                match g.witness_between(lo, hi)? {
                    Some(w) => {
                        let t = Series::monomial(&amb, w.clone(), amb.field.one());
                        if !ck.fam.contains(&t, hi)? || ck.fam.contains(&t, lo)? {
                            wit = format!("t^{} does not separate the cuts", g.fmt_elem(&w));
                            return Ok(false);
                        }
                    }
                    None => {
                        wit = "no separating element found".into();
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        ck.record(
            "monotone",
            format!("cuts {} {}", cl(lam), cl(gam)),
            ok,
            || wit,
        );

        // multiplicative
        let ok = (|| {
            let a = ck.fam.part(x, lam)?.materialize(n)?;
            let b = ck.fam.part(y, gam)?.materialize(n)?;
            ck.fam.contains(&a.mul(&b), &g.left_sum(lam, gam)?)
        })();
        ck.record(
            "multiplicative",
            format!("{tag}, y={}, cut2={}", lit(y), cl(gam)),
            ok,
            String::new,
        );

        // translation, both inclusions
        let ok = (|| {
            let t = Series::monomial(&amb, e.clone(), amb.field.one());
            let ti = t.invert()?;
            let moved = g.shift(e, lam)?;
            let a = t.mul(&ck.fam.part(x, lam)?);
            let b = ti.mul(&ck.fam.part(x, &moved)?);
            Ok(ck.fam.contains(&a, &moved)? && ck.fam.contains(&b, lam)?)
        })();
        ck.record(
            "translation",
            format!("{tag}, g={}", g.fmt_elem(e)),
            ok,
            String::new,
        );

        // A[g-] = t^g A[0-]
        let ok = (|| {
            let z = Cut::minus(g.zero());
            let gm = Cut::minus(e.clone());
            let t = Series::monomial(&amb, e.clone(), amb.field.one());
            let a = t.mul(&ck.fam.part(x, &z)?);
            let b = t.invert()?.mul(&ck.fam.part(x, &gm)?);
            Ok(ck.fam.contains(&a, &gm)? && ck.fam.contains(&b, &z)?)
        })();
        ck.record(
            "shifted-base",
            format!("x={}, g={}", lit(x), g.fmt_elem(e)),
            ok,
            String::new,
        );

        // A[g+] = A[g-] + t^g k, and the middle piece is a monomial
        let ok = (|| {
            let gp = Cut::plus(e.clone());
            let gm = Cut::minus(e.clone());
            let up = ck.fam.part(x, &gp)?;
            let down = ck.fam.part(x, &gm)?;
            let mid = up.sub(&down);
            Ok(is_monomial_at(&mid, e, n)?
                && in_ideal(&mid, &gm)?
                && ck.fam.contains(&mid, &gp)?
                && ck.fam.part(&up, &gm)?.eq_prefix(&down, n)?)
        })();
        ck.record(
            "step",
            format!("x={}, g={}", lit(x), g.fmt_elem(e)),
            ok,
            String::new,
        );
    }
    ck.out
}
