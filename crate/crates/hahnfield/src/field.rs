//! Exact coefficient fields: `Q`, `F_p`, `F_p(y)` and the perfect hull of
//! `F_p(y)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{self, Poly};

/// A reduced fraction of polynomials over `F_p` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    fn new(num: Poly, den: Poly, p: u64) -> Result<RatFun> {
        let num = poly::trim(num);
        let den = poly::trim(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(RatFun { num, den: vec![1] });
        }
        let g = poly::gcd(&num, &den, p);
        let (n, _) = poly::divrem(&num, &g, p);
        let (d, _) = poly::divrem(&den, &g, p);
        let (d, l) = poly::monic(&d, p);
        Ok(RatFun {
            num: poly::scale(&n, poly::invmod(l, p), p),
            den: d,
        })
    }

    fn konst(c: u64) -> RatFun {
        RatFun {
            num: poly::trim(vec![c]),
            den: vec![1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn add(&self, o: &RatFun, p: u64) -> RatFun {
        let n = poly::add(
            &poly::mul(&self.num, &o.den, p),
            &poly::mul(&o.num, &self.den, p),
            p,
        );
        RatFun::new(n, poly::mul(&self.den, &o.den, p), p).unwrap()
    }

    fn mul(&self, o: &RatFun, p: u64) -> RatFun {
        RatFun::new(
            poly::mul(&self.num, &o.num, p),
            poly::mul(&self.den, &o.den, p),
            p,
        )
        .unwrap()
    }

    fn neg(&self, p: u64) -> RatFun {
        RatFun {
            num: poly::neg(&self.num, p),
            den: self.den.clone(),
        }
    }

    fn inv(&self, p: u64) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone(), p)
    }

    fn frob(&self, p: u64, k: u32) -> RatFun {
        RatFun {
            num: poly::frob(&self.num, p, k),
            den: poly::frob(&self.den, p, k),
        }
    }

    fn pth_root(&self, p: u64) -> Option<RatFun> {
        Some(RatFun {
            num: poly::pth_root(&self.num, p)?,
            den: poly::pth_root(&self.den, p)?,
        })
    }

    fn fmt(&self, var: &str) -> String {
        let n = poly::fmt(&self.num, var);
        if self.den == [1] {
            return n;
        }
        let n = if poly::term_count(&self.num) > 1 {
            format!("({n})")
        } else {
            n
        };
        let d = poly::fmt(&self.den, var);
        let d = if poly::term_count(&self.den) > 1 || self.den.last() != Some(&1) || d.contains('*')
        {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u64),
    RatFun { p: u64, var: String },
    PerfectHull { p: u64, var: String, max_depth: u32 },
}

/// A field element. `Ph(f, d)` denotes `f^(1/p^d)` with `d` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp(u64),
    Rf(RatFun),
    Ph(RatFun, u32),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) | Field::RatFun { p, .. } | Field::PerfectHull { p, .. } => *p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.characteristic();
        if p != 0 && !crate::group::is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(())
    }

    pub fn var_name(&self) -> Option<&str> {
        match self {
            Field::RatFun { var, .. } | Field::PerfectHull { var, .. } => Some(var),
            _ => None,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.int(0)
    }

    pub fn one(&self) -> Coeff {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Fp(n.rem_euclid(*p as i64) as u64),
            Field::RatFun { p, .. } => Coeff::Rf(RatFun::konst(n.rem_euclid(*p as i64) as u64)),
            Field::PerfectHull { p, .. } => {
                Coeff::Ph(RatFun::konst(n.rem_euclid(*p as i64) as u64), 0)
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_q(&self, q: &BigRational) -> Result<Coeff> {
        if let Field::Rationals = self {
            return Ok(Coeff::Q(q.clone()));
        }
        let p = BigInt::from(self.characteristic());
        let red = |x: &BigInt| -> i64 {
            let r = ((x % &p) + &p) % &p;
            r.to_i64().unwrap()
        };
        let n = self.int(red(q.numer()));
        let d = self.int(red(q.denom()));
        self.div(&n, &d)
    }

    /// The distinguished transcendental `y`.
    pub fn var(&self) -> Result<Coeff> {
        match self {
            Field::RatFun { .. } => Ok(Coeff::Rf(RatFun {
                num: vec![0, 1],
                den: vec![1],
            })),
            Field::PerfectHull { .. } => Ok(Coeff::Ph(
                RatFun {
                    num: vec![0, 1],
                    den: vec![1],
                },
                0,
            )),
            _ => Err(Error::Invalid("field has no variable".into())),
        }
    }

    /// Whether `a` is an element of this field (and not of another one).
    pub fn owns(&self, a: &Coeff) -> bool {
        let p = self.characteristic();
        match (self, a) {
            (Field::Rationals, Coeff::Q(_)) => true,
            (Field::Prime(_), Coeff::Fp(x)) => *x < p,
            (Field::RatFun { .. }, Coeff::Rf(f)) | (Field::PerfectHull { .. }, Coeff::Ph(f, _)) => {
                f.num.iter().chain(f.den.iter()).all(|&c| c < p)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(x) => *x == 0,
            Coeff::Rf(f) | Coeff::Ph(f, _) => f.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        *a == self.one()
    }

    fn p(&self) -> u64 {
        self.characteristic()
    }

    fn ph_norm(&self, mut f: RatFun, mut d: u32) -> Coeff {
        let p = self.p();
        while d > 0 {
            match f.pth_root(p) {
                Some(r) => {
                    f = r;
                    d -= 1;
                }
                None => break,
            }
        }
        Coeff::Ph(f, d)
    }

    fn ph_lift(&self, f: &RatFun, d: u32, m: u32) -> RatFun {
        f.frob(self.p(), m - d)
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let p = self.p();
        match (a, b) {
            (Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp((x + y) % p),
            (Coeff::Rf(x), Coeff::Rf(y)) => Coeff::Rf(x.add(y, p)),
            (Coeff::Ph(x, d), Coeff::Ph(y, e)) => {
                let m = (*d).max(*e);
                let s = self.ph_lift(x, *d, m).add(&self.ph_lift(y, *e, m), p);
                self.ph_norm(s, m)
            }
            _ => panic!("coefficients from different fields"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        let p = self.p();
        match a {
            Coeff::Q(x) => Coeff::Q(-x),
            Coeff::Fp(x) => Coeff::Fp((p - x) % p),
            Coeff::Rf(x) => Coeff::Rf(x.neg(p)),
            Coeff::Ph(x, d) => Coeff::Ph(x.neg(p), *d),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let p = self.p();
        match (a, b) {
            (Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(poly::mulmod(*x, *y, p)),
            (Coeff::Rf(x), Coeff::Rf(y)) => Coeff::Rf(x.mul(y, p)),
            (Coeff::Ph(x, d), Coeff::Ph(y, e)) => {
                let m = (*d).max(*e);
                let s = self.ph_lift(x, *d, m).mul(&self.ph_lift(y, *e, m), p);
                self.ph_norm(s, m)
            }
            _ => panic!("coefficients from different fields"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let p = self.p();
        Ok(match a {
            Coeff::Q(x) => Coeff::Q(x.recip()),
            Coeff::Fp(x) => Coeff::Fp(poly::invmod(*x, p)),
            Coeff::Rf(x) => Coeff::Rf(x.inv(p)?),
            Coeff::Ph(x, d) => Coeff::Ph(x.inv(p)?, *d),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn powi(&self, a: &Coeff, e: i64) -> Result<Coeff> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            self.inv(&self.pow(a, e.unsigned_abs()))
        }
    }

    pub fn frobenius(&self, a: &Coeff) -> Result<Coeff> {
        match self {
            Field::Rationals => Err(Error::Invalid(
                "Frobenius needs positive characteristic".into(),
            )),
            _ => Ok(self.pow(a, self.p())),
        }
    }

    /// The unique `b` with `b^p = a`.
    pub fn p_th_root(&self, a: &Coeff) -> Result<Coeff> {
        let p = self.p();
        match (self, a) {
            (Field::Prime(_), Coeff::Fp(x)) => Ok(Coeff::Fp(*x)),
            (Field::PerfectHull { max_depth, .. }, Coeff::Ph(f, d)) => {
                let r = self.ph_norm(f.clone(), d + 1);
                match &r {
                    Coeff::Ph(_, e) if *e > *max_depth => Err(Error::RootDepthExceeded(*max_depth)),
                    _ => Ok(r),
                }
            }
            (Field::RatFun { .. }, Coeff::Rf(f)) => f
                .pth_root(p)
                .map(Coeff::Rf)
                .ok_or_else(|| Error::Invalid("not a p-th power".into())),
            _ => Err(Error::Invalid(
                "p-th roots need a perfect field of positive characteristic".into(),
            )),
        }
    }

    /// `root(p^depth)` of an element of the base rational function field.
    pub fn ph_root_of(&self, a: &Coeff, depth: u32) -> Result<Coeff> {
        let Field::PerfectHull { max_depth, .. } = self else {
            return Err(Error::Invalid("roots need a perfect hull".into()));
        };
        let Coeff::Ph(f, d) = a else {
            return Err(Error::Invalid("coefficient from another field".into()));
        };
        let r = self.ph_norm(f.clone(), d + depth);
        match &r {
            Coeff::Ph(_, e) if *e > *max_depth => Err(Error::RootDepthExceeded(*max_depth)),
            _ => Ok(r),
        }
    }

    pub fn literal(&self) -> String {
        match self {
            Field::Rationals => "Q".into(),
            Field::Prime(p) => format!("F{p}"),
            Field::RatFun { p, var } => format!("F{p}({var})"),
            Field::PerfectHull { p, var, max_depth } => format!("PH(F{p}({var}),{max_depth})"),
        }
    }

    pub fn fmt_coeff(&self, a: &Coeff) -> String {
        let var = self.var_name().unwrap_or("y");
        match a {
            Coeff::Q(q) => {
                if q.is_integer() {
                    format!("{}", q.numer())
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Fp(x) => format!("{x}"),
            Coeff::Rf(f) => f.fmt(var),
            Coeff::Ph(f, 0) => f.fmt(var),
            Coeff::Ph(f, d) => format!("root{}({})", self.p().pow(*d), f.fmt(var)),
        }
    }

    /// True for a nonzero element of `Q` below zero; used only for printing
    /// series with signs.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        matches!(a, Coeff::Q(q) if q.is_negative())
    }

    /// Constant term test used by the residue map: elements of the prime
    /// field or of `Q`.
    pub fn is_constant(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(_) | Coeff::Fp(_) => true,
            Coeff::Rf(f) | Coeff::Ph(f, _) => f.den == [1] && f.num.len() <= 1,
        }
    }
}
