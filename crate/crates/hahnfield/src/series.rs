//! Grid-supported generalized power series `k((G, f))`.
//!
//! A series either carries an explicit finite list of nonzero terms or a
//! coefficient rule on a grid `offset + <gens>`. Rule values are memoized;
//! the lock is released while a rule runs so rules may recurse into the same
//! series.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use spin::Mutex;

use crate::cut::Cut;
use crate::error::{Error, Result};
use crate::factor::{FactorSet, Section};
use crate::field::{Coeff, Field};
use crate::group::{Elem, Group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Default number of grid points materialized by reports and checks.
    pub depth: usize,
    /// Exponent cap for monoid decomposition.
    pub monoid_cap: u32,
    /// Grid points scanned before a valuation search gives up.
    pub horizon: usize,
    /// Index bound for pseudo-Cauchy sequences.
    pub pc_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            depth: 30,
            monoid_cap: 64,
            horizon: 10_000,
            pc_cap: 12,
        }
    }
}

/// Group, coefficient field, factor set and bounds shared by a family of
/// series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub group: Group,
    pub field: Field,
    pub factor: FactorSet,
    pub cfg: Config,
}

impl Ambient {
    pub fn new(group: Group, field: Field, factor: FactorSet, cfg: Config) -> Result<Arc<Ambient>> {
        group.validate()?;
        field.validate()?;
        match &factor {
            FactorSet::Trivial | FactorSet::Derived(Section::Homomorphic) => {}
            FactorSet::Derived(Section::RootScaled { c, .. }) => {
                if group.rank() != 1 {
                    return Err(Error::Invalid(
                        "derived factor sets need a rank-one group".into(),
                    ));
                }
                if !field.owns(c) || field.is_zero(c) {
                    return Err(Error::Invalid(
                        "section scale is not a unit of the field".into(),
                    ));
                }
            }
            FactorSet::Table(entries) => {
                for (a, b, c) in entries {
                    group.check(a)?;
                    group.check(b)?;
                    if !field.owns(c) || field.is_zero(c) {
                        return Err(Error::Invalid(
                            "factor-set values must be units of the field".into(),
                        ));
                    }
                }
            }
        }
        Ok(Arc::new(Ambient {
            group,
            field,
            factor,
            cfg,
        }))
    }

    /// Trivial factor set and default bounds.
    pub fn simple(group: Group, field: Field) -> Result<Arc<Ambient>> {
        Ambient::new(group, field, FactorSet::Trivial, Config::default())
    }

    pub fn f(&self, a: &Elem, b: &Elem) -> Coeff {
        self.factor.eval(&self.field, a, b)
    }
}

type Rule = dyn Fn(&Series, &Elem) -> Result<Coeff> + Send + Sync;

const WARM_LIMIT: usize = 1024;

struct Grid {
    points: Vec<Elem>,
    frontier: BTreeSet<Elem>,
}

struct Memo {
    values: BTreeMap<Elem, Coeff>,
    /// Number of leading grid points whose values are all in `values`.
    warm: usize,
}

struct Lazy {
    rule: Box<Rule>,
    memo: Mutex<Memo>,
    grid: Mutex<Grid>,
}

#[derive(Clone)]
enum Body {
    Finite(Arc<Vec<(Elem, Coeff)>>),
    Lazy(Arc<Lazy>),
}

#[derive(Clone)]
pub struct Series {
    amb: Arc<Ambient>,
    offset: Elem,
    gens: Vec<Elem>,
    body: Body,
    stream: bool,
    /// A cut known to lie above the support, set by lazy truncation.
    bound: Option<Cut>,
}

fn union_gens(mut a: Vec<Elem>, b: &[Elem]) -> Vec<Elem> {
    a.extend(b.iter().cloned());
    a.sort();
    a.dedup();
    a
}

impl Series {
    fn finite_raw(amb: &Arc<Ambient>, terms: Vec<(Elem, Coeff)>) -> Series {
        let offset = terms
            .first()
            .map(|t| t.0.clone())
            .unwrap_or_else(|| amb.group.zero());
        let gens = terms.iter().skip(1).map(|t| t.0.sub(&offset)).collect();
        Series {
            amb: amb.clone(),
            offset,
            gens,
            body: Body::Finite(Arc::new(terms)),
            stream: false,
            bound: None,
        }
    }

    fn lazy_raw(amb: &Arc<Ambient>, offset: Elem, gens: Vec<Elem>, rule: Box<Rule>) -> Series {
        let mut gens = gens;
        gens.retain(|g| g.is_positive());
        gens.sort();
        gens.dedup();
        let mut frontier = BTreeSet::new();
        frontier.insert(offset.clone());
        let lazy = Lazy {
            rule,
            memo: Mutex::new(Memo {
                values: BTreeMap::new(),
                warm: 0,
            }),
            grid: Mutex::new(Grid {
                points: Vec::new(),
                frontier,
            }),
        };
        Series {
            amb: amb.clone(),
            offset,
            gens,
            body: Body::Lazy(Arc::new(lazy)),
            stream: false,
            bound: None,
        }
    }

    pub fn zero(amb: &Arc<Ambient>) -> Series {
        Series::finite_raw(amb, Vec::new())
    }

    pub fn one(amb: &Arc<Ambient>) -> Series {
        Series::constant(amb, amb.field.one())
    }

    pub fn constant(amb: &Arc<Ambient>, c: Coeff) -> Series {
        Series::monomial(amb, amb.group.zero(), c)
    }

    /// `c * t^e`, without checking that `e` lies in the group.
    pub fn monomial(amb: &Arc<Ambient>, e: Elem, c: Coeff) -> Series {
        if amb.field.is_zero(&c) {
            return Series::zero(amb);
        }
        Series::finite_raw(amb, Vec::from([(e, c)]))
    }

    /// A finite series; zero coefficients are dropped, exponents must be
    /// distinct group elements.
    pub fn from_terms(amb: &Arc<Ambient>, terms: Vec<(Elem, Coeff)>) -> Result<Series> {
        let mut t: Vec<(Elem, Coeff)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            amb.group.check(&e)?;
            if !amb.field.owns(&c) {
                return Err(Error::Invalid("coefficient from another field".into()));
            }
            t.push((e, c));
        }
        t.sort_by(|a, b| a.0.cmp(&b.0));
        if t.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid("repeated exponent".into()));
        }
        t.retain(|(_, c)| !amb.field.is_zero(c));
        Ok(Series::finite_raw(amb, t))
    }

    /// A finite materialized prefix of an infinite series. `mu` treats its
    /// support as an enumerated increasing sequence.
    pub fn stream(amb: &Arc<Ambient>, terms: Vec<(Elem, Coeff)>) -> Result<Series> {
        let mut s = Series::from_terms(amb, terms)?;
        s.stream = true;
        Ok(s)
    }

    /// A series given by a coefficient rule on `offset + <gens>`.
    pub fn from_rule<F>(
        amb: &Arc<Ambient>,
        offset: Elem,
        gens: Vec<Elem>,
        rule: F,
    ) -> Result<Series>
    where
        F: Fn(&Series, &Elem) -> Result<Coeff> + Send + Sync + 'static,
    {
        amb.group.check(&offset)?;
        for g in &gens {
            amb.group.check(g)?;
            if !g.is_positive() {
                return Err(Error::Invalid("grid generators must be positive".into()));
            }
        }
        Ok(Series::lazy_raw(amb, offset, gens, Box::new(rule)))
    }

    /// `sum_{n >= 0} t^(n g)`.
    pub fn geom(amb: &Arc<Ambient>, g: Elem) -> Result<Series> {
        let one = amb.field.one();
        Series::from_rule(amb, amb.group.zero(), Vec::from([g]), move |_, _| {
            Ok(one.clone())
        })
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn field(&self) -> &Field {
        &self.amb.field
    }

    pub fn group(&self) -> &Group {
        &self.amb.group
    }

    pub fn offset(&self) -> &Elem {
        &self.offset
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.body, Body::Finite(_))
    }

    pub fn is_stream(&self) -> bool {
        self.stream
    }

    /// The nonzero terms of a finite series.
    pub fn terms(&self) -> Option<&[(Elem, Coeff)]> {
        match &self.body {
            Body::Finite(t) => Some(t),
            Body::Lazy(_) => None,
        }
    }

    /// Zero as a finite series (a rule that happens to vanish is not detected).
    pub fn is_finite_zero(&self) -> bool {
        matches!(&self.body, Body::Finite(t) if t.is_empty())
    }

    /// The `i`-th grid point, or `None` past the end of a finite grid.
    pub fn grid_point(&self, i: usize) -> Option<Elem> {
        match &self.body {
            Body::Finite(t) => t.get(i).map(|x| x.0.clone()),
            Body::Lazy(l) => {
                let mut g = l.grid.lock();
                while g.points.len() <= i {
                    let e = g.frontier.pop_first()?;
                    for x in &self.gens {
                        g.frontier.insert(e.add(x));
                    }
                    g.points.push(e);
                }
                Some(g.points[i].clone())
            }
        }
    }

    /// The first `n` grid points (fewer if the grid is finite).
    pub fn grid_prefix(&self, n: usize) -> Vec<Elem> {
        (0..n).map_while(|i| self.grid_point(i)).collect()
    }

    fn grid_index(&self, l: &Lazy, e: &Elem) -> Option<usize> {
        {
            let g = l.grid.lock();
            if let Some(last) = g.points.last() {
                if e <= last {
                    return g.points.binary_search(e).ok();
                }
            }
            if g.points.len() >= WARM_LIMIT {
                return None;
            }
        }
        let mut i = 0;
        while let Some(p) = self.grid_point(i) {
            if p >= *e {
                return (p == *e).then_some(i);
            }
            i += 1;
            if i >= WARM_LIMIT {
                return None;
            }
        }
        None
    }

    fn eval_rule(&self, l: &Lazy, e: &Elem) -> Result<Coeff> {
        if let Some(c) = l.memo.lock().values.get(e) {
            return Ok(c.clone());
        }
        let c = (l.rule)(self, e)?;
        l.memo.lock().values.insert(e.clone(), c.clone());
        Ok(c)
    }

    pub fn coeff(&self, e: &Elem) -> Result<Coeff> {
        let field = &self.amb.field;
        match &self.body {
            Body::Finite(t) => Ok(match t.binary_search_by(|x| x.0.cmp(e)) {
                Ok(i) => t[i].1.clone(),
                Err(_) => field.zero(),
            }),
            Body::Lazy(l) => {
                if *e < self.offset {
                    return Ok(field.zero());
                }
                if let Some(c) = l.memo.lock().values.get(e) {
                    return Ok(c.clone());
                }
                match self.grid_index(l, e) {
                    Some(idx) => {
                        // evaluate predecessors in order to keep recursion shallow
                        let start = l.memo.lock().warm;
                        for j in start..idx {
                            let p = self.grid_point(j).unwrap();
                            self.eval_rule(l, &p)?;
                            let mut m = l.memo.lock();
                            m.warm = m.warm.max(j + 1);
                        }
                        self.eval_rule(l, e)
                    }
                    None => {
                        let rel = e.sub(&self.offset);
                        if !self
                            .amb
                            .group
                            .in_monoid(&self.gens, &rel, self.amb.cfg.monoid_cap)?
                        {
                            return Ok(field.zero());
                        }
                        self.eval_rule(l, e)
                    }
                }
            }
        }
    }

    /// Nonzero terms among the first `n` grid points.
    pub fn prefix(&self, n: usize) -> Result<Vec<(Elem, Coeff)>> {
        if let Body::Finite(t) = &self.body {
            return Ok(t.iter().take(n).cloned().collect());
        }
        let mut out = Vec::new();
        for p in self.grid_prefix(n) {
            let c = self.coeff(&p)?;
            if !self.amb.field.is_zero(&c) {
                out.push((p, c));
            }
        }
        Ok(out)
    }

    /// The finite series of the coefficients at the given points.
    pub fn restrict(&self, points: &[Elem]) -> Result<Series> {
        let mut t = Vec::new();
        for p in points {
            let c = self.coeff(p)?;
            if !self.amb.field.is_zero(&c) {
                t.push((p.clone(), c));
            }
        }
        t.sort_by(|a, b| a.0.cmp(&b.0));
        t.dedup_by(|a, b| a.0 == b.0);
        Ok(Series::finite_raw(&self.amb, t))
    }

    /// The first `n` grid points as a finite series.
    pub fn materialize(&self, n: usize) -> Result<Series> {
        Ok(Series::finite_raw(&self.amb, self.prefix(n)?))
    }

    pub fn leading_term(&self) -> Result<Option<(Elem, Coeff)>> {
        match &self.body {
            Body::Finite(t) => Ok(t.first().cloned()),
            Body::Lazy(_) => {
                for i in 0..self.amb.cfg.horizon {
                    let Some(p) = self.grid_point(i) else {
                        return Ok(None);
                    };
                    let c = self.coeff(&p)?;
                    if !self.amb.field.is_zero(&c) {
                        return Ok(Some((p, c)));
                    }
                }
                Err(Error::HorizonExceeded(self.amb.cfg.horizon))
            }
        }
    }

    /// `None` stands for the valuation of zero.
    pub fn valuation(&self) -> Result<Option<Elem>> {
        Ok(self.leading_term()?.map(|t| t.0))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.leading_term()?.is_none())
    }

    pub fn neg(&self) -> Series {
        let field = self.amb.field.clone();
        match &self.body {
            Body::Finite(t) => Series::finite_raw(
                &self.amb,
                t.iter().map(|(e, c)| (e.clone(), field.neg(c))).collect(),
            ),
            Body::Lazy(_) => {
                let x = self.clone();
                Series::lazy_raw(
                    &self.amb,
                    self.offset.clone(),
                    self.gens.clone(),
                    Box::new(move |_, e| Ok(field.neg(&x.coeff(e)?))),
                )
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Series {
        let field = self.amb.field.clone();
        if field.is_zero(c) {
            return Series::zero(&self.amb);
        }
        match &self.body {
            Body::Finite(t) => Series::finite_raw(
                &self.amb,
                t.iter()
                    .map(|(e, a)| (e.clone(), field.mul(a, c)))
                    .collect(),
            ),
            Body::Lazy(_) => {
                let x = self.clone();
                let c = c.clone();
                Series::lazy_raw(
                    &self.amb,
                    self.offset.clone(),
                    self.gens.clone(),
                    Box::new(move |_, e| Ok(field.mul(&x.coeff(e)?, &c))),
                )
            }
        }
    }

    pub fn add(&self, y: &Series) -> Series {
        debug_assert!(Arc::ptr_eq(&self.amb, &y.amb) || self.amb == y.amb);
        if self.is_finite_zero() {
            return y.clone();
        }
        if y.is_finite_zero() {
            return self.clone();
        }
        let field = self.amb.field.clone();
        if let (Body::Finite(a), Body::Finite(b)) = (&self.body, &y.body) {
            let mut m: BTreeMap<Elem, Coeff> = a.iter().cloned().collect();
            for (e, c) in b.iter() {
                let v = match m.get(e) {
                    Some(x) => field.add(x, c),
                    None => c.clone(),
                };
                m.insert(e.clone(), v);
            }
            let t = m.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
            return Series::finite_raw(&self.amb, t);
        }
        let o = self.offset.clone().min(y.offset.clone());
        let mut gens = union_gens(self.gens.clone(), &y.gens);
        gens.push(self.offset.sub(&o));
        gens.push(y.offset.sub(&o));
        let (x, y) = (self.clone(), y.clone());
        Series::lazy_raw(
            &self.amb,
            o,
            gens,
            Box::new(move |_, e| Ok(field.add(&x.coeff(e)?, &y.coeff(e)?))),
        )
    }

    pub fn sub(&self, y: &Series) -> Series {
        self.add(&y.neg())
    }

    pub fn mul(&self, y: &Series) -> Series {
        debug_assert!(Arc::ptr_eq(&self.amb, &y.amb) || self.amb == y.amb);
        if self.is_finite_zero() || y.is_finite_zero() {
            return Series::zero(&self.amb);
        }
        let amb = self.amb.clone();
        match (&self.body, &y.body) {
            (Body::Finite(a), Body::Finite(b)) => {
                let field = &amb.field;
                let mut m: BTreeMap<Elem, Coeff> = BTreeMap::new();
                for (ea, ca) in a.iter() {
                    for (eb, cb) in b.iter() {
                        let v = field.mul(&field.mul(ca, cb), &amb.f(ea, eb));
                        let e = ea.add(eb);
                        let s = match m.get(&e) {
                            Some(x) => field.add(x, &v),
                            None => v,
                        };
                        m.insert(e, s);
                    }
                }
                let t = m.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
                Series::finite_raw(&amb, t)
            }
            (Body::Finite(_), Body::Lazy(_)) => y.mul(self),
            (Body::Lazy(_), Body::Finite(b)) => {
                let (x, b) = (self.clone(), b.clone());
                let off = self.offset.add(&y.offset);
                let gens = union_gens(self.gens.clone(), &y.gens);
                let a2 = amb.clone();
                Series::lazy_raw(
                    &amb,
                    off,
                    gens,
                    Box::new(move |_, e| {
                        let field = &a2.field;
                        let mut s = field.zero();
                        for (eb, cb) in b.iter() {
                            let ea = e.sub(eb);
                            if ea < x.offset {
                                continue;
                            }
                            let ca = x.coeff(&ea)?;
                            if !field.is_zero(&ca) {
                                s = field.add(&s, &field.mul(&field.mul(&ca, cb), &a2.f(&ea, eb)));
                            }
                        }
                        Ok(s)
                    }),
                )
            }
            (Body::Lazy(_), Body::Lazy(_)) => {
                let (x, y) = (self.clone(), y.clone());
                let off = x.offset.add(&y.offset);
                let mut all = x.gens.clone();
                all.extend(y.gens.iter().cloned());
                let gens = union_gens(x.gens.clone(), &y.gens);
                let a2 = amb.clone();
                let off2 = off.clone();
                Series::lazy_raw(
                    &amb,
                    off,
                    gens,
                    Box::new(move |_, e| {
                        let field = &a2.field;
                        let sols =
                            a2.group
                                .monoid_decompose(&all, &e.sub(&off2), a2.cfg.monoid_cap)?;
                        let nx = x.gens.len();
                        let mut alphas = BTreeSet::new();
                        for s in sols {
                            let mut a = x.offset.clone();
                            for (i, n) in s[..nx].iter().enumerate() {
                                a = a.add(&all[i].scale(*n as i64));
                            }
                            alphas.insert(a);
                        }
                        let mut s = field.zero();
                        for a in alphas {
                            let ca = x.coeff(&a)?;
                            if field.is_zero(&ca) {
                                continue;
                            }
                            let b = e.sub(&a);
                            let cb = y.coeff(&b)?;
                            if !field.is_zero(&cb) {
                                s = field.add(&s, &field.mul(&field.mul(&ca, &cb), &a2.f(&a, &b)));
                            }
                        }
                        Ok(s)
                    }),
                )
            }
        }
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut r = Series::one(&self.amb);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// The multiplicative inverse. A rule-based series must have its
    /// valuation at its grid offset.
    pub fn invert(&self) -> Result<Series> {
        let amb = self.amb.clone();
        let Some((o, a)) = self.leading_term()? else {
            return Err(Error::ZeroDivisor);
        };
        let field = amb.field.clone();
        let neg_o = o.neg();
        if let Some(t) = self.terms() {
            if t.len() == 1 {
                let c = field.inv(&field.mul(&a, &amb.f(&o, &neg_o)))?;
                return Ok(Series::monomial(&amb, neg_o, c));
            }
            let rest: Vec<(Elem, Coeff)> = t[1..].to_vec();
            let gens = rest.iter().map(|(e, _)| e.sub(&o)).collect();
            let a2 = amb.clone();
            let off = neg_o.clone();
            return Ok(Series::lazy_raw(
                &amb,
                neg_o,
                gens,
                Box::new(move |me, b| {
                    let field = &a2.field;
                    let mut s = if *b == off { field.one() } else { field.zero() };
                    let top = b.add(&o);
                    for (al, xa) in &rest {
                        let bp = top.sub(al);
                        if bp < off {
                            break;
                        }
                        let yb = me.coeff(&bp)?;
                        if !field.is_zero(&yb) {
                            s = field.sub(&s, &field.mul(&field.mul(xa, &yb), &a2.f(al, &bp)));
                        }
                    }
                    field.div(&s, &field.mul(&a, &a2.f(&o, b)))
                }),
            ));
        }
        if o != self.offset {
            return Err(Error::Invalid(
                "rule-based divisor must have its valuation at the grid offset".into(),
            ));
        }
        let x = self.clone();
        let mut all = x.gens.clone();
        all.extend(x.gens.iter().cloned());
        let a2 = amb.clone();
        let off = neg_o.clone();
        Ok(Series::lazy_raw(
            &amb,
            neg_o,
            x.gens.clone(),
            Box::new(move |me, b| {
                let field = &a2.field;
                let mut s = if *b == off { field.one() } else { field.zero() };
                let top = b.add(&o);
                let sols = a2.group.monoid_decompose(&all, &top, a2.cfg.monoid_cap)?;
                let mut alphas = BTreeSet::new();
                for sol in sols {
                    let mut al = o.clone();
                    for (i, n) in sol[..x.gens.len()].iter().enumerate() {
                        al = al.add(&all[i].scale(*n as i64));
                    }
                    if al != o {
                        alphas.insert(al);
                    }
                }
                for al in alphas {
                    let xa = x.coeff(&al)?;
                    if field.is_zero(&xa) {
                        continue;
                    }
                    let bp = top.sub(&al);
                    let yb = me.coeff(&bp)?;
                    if !field.is_zero(&yb) {
                        s = field.sub(&s, &field.mul(&field.mul(&xa, &yb), &a2.f(&al, &bp)));
                    }
                }
                field.div(&s, &field.mul(&a, &a2.f(&o, b)))
            }),
        ))
    }

    /// The restriction to exponents in the left set of `cut`.
    pub fn truncate(&self, cut: &Cut) -> Result<Series> {
        let g = &self.amb.group;
        let inside = |e: &Elem| -> Result<bool> {
            Ok(g.cmp_cut_elem(cut, e)? == core::cmp::Ordering::Greater)
        };
        match cut {
            Cut::PosInf => return Ok(self.clone()),
            Cut::NegInf => return Ok(Series::zero(&self.amb)),
            _ => {}
        }
        if let Some(t) = self.terms() {
            let mut out = Vec::new();
            for (e, c) in t {
                if inside(e)? {
                    out.push((e.clone(), c.clone()));
                } else {
                    break;
                }
            }
            return Ok(Series::finite_raw(&self.amb, out));
        }
        for i in 0..self.amb.cfg.depth {
            match self.grid_point(i) {
                Some(p) if inside(&p)? => continue,
                _ => {
                    let pts = self.grid_prefix(i);
                    return self.restrict(&pts);
                }
            }
        }
        let x = self.clone();
        let cut = cut.clone();
        let field = self.amb.field.clone();
        let group = self.amb.group.clone();
        let bound = cut.clone();
        let mut out = Series::lazy_raw(
            &self.amb,
            self.offset.clone(),
            self.gens.clone(),
            Box::new(move |_, e| {
                if group.cmp_cut_elem(&cut, e)? == core::cmp::Ordering::Greater {
                    x.coeff(e)
                } else {
                    Ok(field.zero())
                }
            }),
        );
        out.bound = Some(bound);
        Ok(out)
    }

    /// A cut above the support, when one is known without inspecting
    /// coefficients.
    pub fn support_bound(&self) -> Option<&Cut> {
        self.bound.as_ref()
    }

    /// Agreement of the first `n` grid points of `self - y`.
    pub fn eq_prefix(&self, y: &Series, n: usize) -> Result<bool> {
        if let (Some(a), Some(b)) = (self.terms(), y.terms()) {
            let (a, b) = (&a[..a.len().min(n)], &b[..b.len().min(n)]);
            if a == b {
                return Ok(true);
            }
        }
        Ok(self.sub(y).prefix(n)?.is_empty())
    }

    /// Literal syntax for the first `n` grid points.
    pub fn literal(&self, n: usize) -> Result<String> {
        Ok(fmt_terms(&self.amb, &self.prefix(n)?))
    }
}

/// Exponent syntax: `t^3`, `t^-1`, `t^(1/2)`, `t^(0,1)`.
pub fn fmt_exp(group: &Group, e: &Elem) -> String {
    let s = group.fmt_elem(e);
    if matches!(group, Group::LexPower(_)) || !e.0[0].is_integer() {
        if s.starts_with('(') {
            format!("t^{s}")
        } else {
            format!("t^({s})")
        }
    } else if s == "1" {
        "t".into()
    } else {
        format!("t^{s}")
    }
}

pub fn fmt_terms(amb: &Ambient, terms: &[(Elem, Coeff)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let field = &amb.field;
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = field.is_negative(c);
        let c = if neg { field.neg(c) } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut cs = field.fmt_coeff(&c);
        if cs.contains('+') || cs.contains('-') {
            cs = format!("({cs})");
        }
        if e.is_zero() {
            out.push_str(&cs);
        } else if field.is_one(&c) {
            out.push_str(&fmt_exp(&amb.group, e));
        } else {
            out.push_str(&format!("{cs}*{}", fmt_exp(&amb.group, e)));
        }
    }
    out
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.literal(10) {
            Ok(s) if self.is_finite() => write!(f, "Series({s})"),
            Ok(s) => write!(f, "Series({s} + ...)"),
            Err(e) => write!(f, "Series(<{e}>)"),
        }
    }
}
