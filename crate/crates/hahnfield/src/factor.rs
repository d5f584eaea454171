//! Factor sets (symmetric normalized 2-cocycles `G x G -> k^*`) and the
//! sections they come from.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::group::{fmt_q, Elem, Group, Q64};

/// A choice of designated monomials `t^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    /// `t^(a+b) = t^a t^b` for all `a, b`.
    Homomorphic,
    /// Over a rank-one group: `t^g = c^(-trunc(g/(order*step)))` times the
    /// homomorphic symbol, so that `(t^step)^order = c * t^(order*step)` and
    /// `t^(-g) = 1/t^g`.
    RootScaled { step: Q64, order: u32, c: Coeff },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSet {
    Trivial,
    Derived(Section),
    /// Symmetric table with value 1 outside the listed pairs.
    Table(Vec<(Elem, Elem, Coeff)>),
}

fn trunc_div(a: Q64, u: Q64) -> i64 {
    (a / u).trunc().to_integer()
}

/// The coboundary `f[a,b] = t^a t^b / t^(a+b)` of a section.
pub fn derive_factor_set(group: &Group, field: &Field, s: &Section) -> Result<FactorSet> {
    match s {
        Section::Homomorphic => Ok(FactorSet::Trivial),
        Section::RootScaled { step, order, c } => {
            if field.is_zero(c) {
                return Err(Error::Invalid("section scale must be nonzero".into()));
            }
            if *order == 0 || *step <= Q64::from_integer(0) {
                return Err(Error::Invalid(
                    "section needs positive step and order".into(),
                ));
            }
            if group.rank() != 1 {
                return Err(Error::Invalid(
                    "root-scaled sections need a rank-one group".into(),
                ));
            }
            let unit = *step * Q64::from_integer(*order as i64);
            // homomorphic when every element is a multiple of the unit
            let hom = field.is_one(c) || group.step().is_some_and(|g| (g / unit).is_integer());
            if hom {
                Ok(FactorSet::Trivial)
            } else {
                Ok(FactorSet::Derived(s.clone()))
            }
        }
    }
}

impl FactorSet {
    pub fn is_trivial(&self) -> bool {
        matches!(self, FactorSet::Trivial)
    }

    pub fn eval(&self, field: &Field, a: &Elem, b: &Elem) -> Coeff {
        match self {
            FactorSet::Trivial => field.one(),
            FactorSet::Derived(Section::RootScaled { step, order, c }) => {
                let u = *step * Q64::from_integer(*order as i64);
                let (x, y) = (a.0[0], b.0[0]);
                let e = trunc_div(x + y, u) - trunc_div(x, u) - trunc_div(y, u);
                field.powi(c, e).expect("nonzero section scale")
            }
            FactorSet::Derived(Section::Homomorphic) => field.one(),
            FactorSet::Table(entries) => entries
                .iter()
                .find(|(x, y, _)| (x == a && y == b) || (x == b && y == a))
                .map(|e| e.2.clone())
                .unwrap_or_else(|| field.one()),
        }
    }

    /// Sample triples built from the table keys, so that a verification run
    /// always visits the explicitly listed pairs.
    pub fn table_samples(&self, group: &Group) -> Vec<(Elem, Elem, Elem)> {
        let FactorSet::Table(entries) = self else {
            return Vec::new();
        };
        let z = group.zero();
        let mut out = Vec::new();
        for (a, b, _) in entries {
            for x in [a, b] {
                out.push((x.clone(), x.neg(), z.clone()));
            }
            out.push((a.clone(), b.clone(), a.clone()));
            out.push((a.clone(), b.clone(), b.clone()));
            out.push((a.sub(b), b.clone(), a.clone()));
        }
        out
    }

    pub fn literal(&self, field: &Field) -> String {
        match self {
            FactorSet::Trivial | FactorSet::Derived(Section::Homomorphic) => "trivial".into(),
            FactorSet::Derived(Section::RootScaled { step, order, c }) => {
                format!("derived:{}:{}:{}", fmt_q(step), order, field.fmt_coeff(c))
            }
            FactorSet::Table(e) => format!("table[{}]", e.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1 symmetry, 2 normalization, 3 cocycle identity, 4 `f[-a,a] = 1`.
    pub axiom: u8,
    pub witness: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub checked: usize,
    /// First violation of each axiom, in axiom order.
    pub violations: Vec<Violation>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the four factor-set axioms on every sample triple `(a, b, c)`.
pub fn cocycle_verify(
    group: &Group,
    field: &Field,
    f: &FactorSet,
    samples: &[(Elem, Elem, Elem)],
) -> CocycleReport {
    let mut first: [Option<Vec<Elem>>; 4] = [None, None, None, None];
    let z = group.zero();
    let one = field.one();
    for (a, b, c) in samples {
        if first[0].is_none() && f.eval(field, a, b) != f.eval(field, b, a) {
            first[0] = Some(Vec::from([a.clone(), b.clone()]));
        }
        for x in [a, b, c] {
            if first[1].is_none() && f.eval(field, &z, x) != one {
                first[1] = Some(Vec::from([z.clone(), x.clone()]));
            }
            if first[3].is_none() && f.eval(field, &x.neg(), x) != one {
                first[3] = Some(Vec::from([x.clone(), x.neg()]));
            }
        }
        if first[2].is_none() {
            let l = field.mul(&f.eval(field, a, &b.add(c)), &f.eval(field, b, c));
            let r = field.mul(&f.eval(field, &a.add(b), c), &f.eval(field, a, b));
            if l != r {
                first[2] = Some(Vec::from([a.clone(), b.clone(), c.clone()]));
            }
        }
    }
    let violations = first
        .into_iter()
        .enumerate()
        .filter_map(|(i, w)| {
            w.map(|witness| Violation {
                axiom: i as u8 + 1,
                witness,
            })
        })
        .collect();
    CocycleReport {
        checked: samples.len(),
        violations,
    }
}
