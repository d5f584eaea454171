//! Recursive-descent parser for the literal syntax shared with the printer:
//! groups, fields, group elements, cuts, coefficients and series
//! expressions.
//!
//! Failures report the farthest position reached together with every token
//! that would have been accepted there.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use hahnfield::{Ambient, Coeff, Cut, Elem, Field, Group, Series, Side, Q64};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
    /// Set for semantic failures such as an exponent outside the group.
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        if let Some(m) = &self.message {
            return write!(f, "{m}");
        }
        write!(
            f,
            "expected one of {}; found {}",
            self.expected.join(", "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: Vec<char>,
    pos: usize,
    far: usize,
    expected: BTreeSet<String>,
    amb: Option<&'a Arc<Ambient>>,
}

impl<'a> Parser<'a> {
    fn new(text: &str) -> Parser<'a> {
        Parser {
            src: text.chars().collect(),
            pos: 0,
            far: 0,
            expected: BTreeSet::new(),
            amb: None,
        }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let (mut line, mut col) = (1, 1);
        for &c in &self.src[..pos.min(self.src.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn note(&mut self, what: &str) {
        if self.pos > self.far {
            self.far = self.pos;
            self.expected.clear();
        }
        if self.pos == self.far {
            self.expected.insert(what.to_string());
        }
    }

    fn fail<T>(&mut self) -> PResult<T> {
        let (line, col) = self.line_col(self.far);
        let found = match self.src.get(self.far) {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        };
        Err(ParseError {
            line,
            col,
            expected: self.expected.iter().cloned().collect(),
            found,
            message: None,
        })
    }

    fn error_at<T>(&self, pos: usize, message: String) -> PResult<T> {
        let (line, col) = self.line_col(pos);
        Err(ParseError {
            line,
            col,
            expected: Vec::new(),
            found: String::new(),
            message: Some(message),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            self.note(&format!("`{c}`"));
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail()
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.ws();
        let end = self.pos + w.chars().count();
        if end <= self.src.len() && self.src[self.pos..end].iter().copied().eq(w.chars()) {
            self.pos = end;
            true
        } else {
            self.note(&format!("`{w}`"));
            false
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            self.fail()
        }
    }

    fn end(&mut self) -> PResult<()> {
        if self.peek().is_none() {
            Ok(())
        } else {
            self.note("end of input");
            self.fail()
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            self.note("integer");
            None
        } else {
            Some(self.src[start..self.pos].iter().collect())
        }
    }

    fn uint(&mut self) -> PResult<u64> {
        let start = self.pos;
        let d = match self.digits() {
            Some(d) => d,
            None => return self.fail(),
        };
        d.parse()
            .or_else(|_| self.error_at(start, format!("integer {d} is too large")))
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat('-');
        let start = self.pos;
        let v = self.uint()?;
        let v =
            i64::try_from(v).or_else(|_| self.error_at(start, "integer is too large".into()))?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        if self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            while self
                .src
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                self.pos += 1;
            }
            Some(self.src[start..self.pos].iter().collect())
        } else {
            self.note("identifier");
            None
        }
    }

    /// `n` or `n/d`, optionally signed.
    fn rational(&mut self) -> PResult<Q64> {
        let start = self.pos;
        let n = self.int()?;
        let d = if self.eat('/') { self.int()? } else { 1 };
        if d == 0 {
            return self.error_at(start, "zero denominator".into());
        }
        Ok(Q64::new(n, d))
    }

    // -- groups and fields ------------------------------------------------

    fn group(&mut self) -> PResult<Group> {
        let start = self.pos;
        let g = if self.eat_word("Z^") {
            let n = self.uint()?;
            self.expect_word("lex")?;
            Group::LexPower(n as usize)
        } else if self.eat_word("Z[1/") {
            let p = self.uint()?;
            self.expect(']')?;
            self.expect('^')?;
            let d = self.uint()?;
            Group::PDivisible {
                p,
                max_depth: d as u32,
            }
        } else if self.eat_word("Z") {
            Group::Integers
        } else if self.eat_word("Q<") {
            let mut gens = vec![self.rational()?];
            while self.eat(',') {
                gens.push(self.rational()?);
            }
            self.expect('>')?;
            Group::Rational(gens)
        } else {
            return self.fail();
        };
        g.validate()
            .or_else(|e| self.error_at(start, e.to_string()))?;
        Ok(g)
    }

    fn field_var(&mut self) -> PResult<String> {
        self.expect('(')?;
        let start = self.pos;
        let Some(v) = self.ident() else {
            return self.fail();
        };
        if v == "t" || v.starts_with("root") || v == "geom" {
            return self.error_at(
                start,
                format!("`{v}` is reserved and cannot name the field variable"),
            );
        }
        self.expect(')')?;
        Ok(v)
    }

    fn field(&mut self) -> PResult<Field> {
        let start = self.pos;
        let k = if self.eat_word("PH(F") {
            let p = self.uint()?;
            let var = self.field_var()?;
            self.expect(',')?;
            let d = self.uint()?;
            self.expect(')')?;
            Field::PerfectHull {
                p,
                var,
                max_depth: d as u32,
            }
        } else if self.eat_word("F") {
            let p = self.uint()?;
            if self.peek() == Some('(') {
                Field::RatFun {
                    p,
                    var: self.field_var()?,
                }
            } else {
                Field::Prime(p)
            }
        } else if self.eat_word("Q") {
            Field::Rationals
        } else {
            return self.fail();
        };
        k.validate()
            .or_else(|e| self.error_at(start, e.to_string()))?;
        Ok(k)
    }

    // -- elements and cuts ------------------------------------------------

    fn elem(&mut self, g: &Group) -> PResult<Elem> {
        let start = self.pos;
        let e = if self.eat('(') {
            let mut v = vec![self.rational()?];
            while self.eat(',') {
                v.push(self.rational()?);
            }
            self.expect(')')?;
            Elem(v)
        } else {
            Elem::scalar(self.rational()?)
        };
        if g.check(&e).is_err() {
            return self.error_at(
                start,
                format!("`{}` is not an element of {}", g.fmt_elem(&e), g.literal()),
            );
        }
        Ok(e)
    }

    fn side(&mut self) -> PResult<Side> {
        if self.eat('+') {
            Ok(Side::Plus)
        } else if self.eat('-') {
            Ok(Side::Minus)
        } else {
            self.fail()
        }
    }

    fn cut(&mut self, g: &Group) -> PResult<Cut> {
        let start = self.pos;
        let c = if self.eat_word("-inf") {
            Cut::NegInf
        } else if self.eat_word("+inf") {
            Cut::PosInf
        } else if self.eat_word("sub") {
            self.expect('(')?;
            let e = self.elem(g)?;
            self.expect(',')?;
            let k = self.uint()? as usize;
            self.expect(')')?;
            Cut::Sub(e, k, self.side()?)
        } else if self.eat_word("gap") {
            self.expect('(')?;
            let q = self.rational()?;
            self.expect(')')?;
            Cut::Gap(q)
        } else {
            let e = self.elem(g)?;
            Cut::Principal(e, self.side()?)
        };
        g.canon(&c)
            .or_else(|e| self.error_at(start, e.to_string()))?;
        Ok(c)
    }

    // -- series expressions ------------------------------------------------

    fn amb(&self) -> &'a Arc<Ambient> {
        self.amb.expect("series parsing needs an ambient")
    }

    fn sum(&mut self) -> PResult<Series> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> PResult<Series> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else {
                let start = self.pos;
                if !self.eat('/') {
                    return Ok(acc);
                }
                let d = self.power()?;
                let inv = match d.terms() {
                    Some(t) if t.len() == 1 => {
                        let (e, c) = &t[0];
                        let amb = self.amb();
                        let ci = amb
                            .field
                            .inv(c)
                            .or_else(|e| self.error_at(start, e.to_string()))?;
                        Series::monomial(amb, e.neg(), ci).mul(&self.inverse_monomial_factor(e))
                    }
                    _ => d
                        .invert()
                        .or_else(|e| self.error_at(start, e.to_string()))?,
                };
                acc = acc.mul(&inv);
            }
        }
    }

    /// `1 / (t^e t^-e)`, the correction that makes `c^-1 t^-e` the inverse
    /// of `c t^e` under a nontrivial factor set.
    fn inverse_monomial_factor(&self, e: &Elem) -> Series {
        let amb = self.amb();
        let f = amb.f(e, &e.neg());
        Series::constant(
            amb,
            amb.field.inv(&f).expect("factor sets take unit values"),
        )
    }

    fn power(&mut self) -> PResult<Series> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let start = self.pos;
        let n = self.int()?;
        let b = if n < 0 {
            base.invert()
                .or_else(|e| self.error_at(start, e.to_string()))?
        } else {
            base
        };
        Ok(b.pow(n.unsigned_abs() as u32))
    }

    fn atom(&mut self) -> PResult<Series> {
        let amb = self.amb();
        let k = &amb.field;
        if self.eat('(') {
            let s = self.sum()?;
            self.expect(')')?;
            return Ok(s);
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            let d = self.digits().unwrap();
            let n: BigInt = d.parse().unwrap();
            let c = k
                .from_q(&BigRational::from_integer(n))
                .or_else(|e| self.error_at(start, e.to_string()))?;
            return Ok(Series::constant(amb, c));
        }
        self.note_atoms();
        let start = self.pos;
        let Some(id) = self.ident() else {
            self.expected.remove("identifier");
            return self.fail();
        };
        match id.as_str() {
            "t" => {
                let e = if self.eat('^') {
                    if self.peek() == Some('(') {
                        self.elem(&amb.group)?
                    } else {
                        let s = self.pos;
                        let n = self.int()?;
                        let e = Elem::scalar(Q64::from_integer(n));
                        if amb.group.check(&e).is_err() {
                            return self.error_at(
                                s,
                                format!("`{n}` is not an element of {}", amb.group.literal()),
                            );
                        }
                        e
                    }
                } else {
                    let e = Elem::scalar(Q64::from_integer(1));
                    if amb.group.check(&e).is_err() {
                        return self.error_at(
                            start,
                            format!("`t` needs an exponent in {}", amb.group.literal()),
                        );
                    }
                    e
                };
                Ok(Series::monomial(amb, e, k.one()))
            }
            "geom" => {
                self.expect('(')?;
                let s = self.pos;
                let e = self.elem(&amb.group)?;
                self.expect(')')?;
                Series::geom(amb, e).or_else(|err| self.error_at(s, err.to_string()))
            }
            _ if id.starts_with("root")
                && id.len() > 4
                && id[4..].chars().all(|c| c.is_ascii_digit()) =>
            {
                let n: u64 = id[4..]
                    .parse()
                    .or_else(|_| self.error_at(start, "root index is too large".into()))?;
                self.expect('(')?;
                let s = self.pos;
                let arg = self.sum()?;
                self.expect(')')?;
                let c = constant_of(&arg)
                    .ok_or(())
                    .or_else(|_| self.error_at(s, "roots apply to constants".into()))?;
                Ok(Series::constant(amb, self.root(n, &c, start)?))
            }
            _ if Some(id.as_str()) == k.var_name() => Ok(Series::constant(amb, k.var().unwrap())),
            _ => {
                self.pos = start;
                self.note_atoms();
                self.fail()
            }
        }
    }

    fn note_atoms(&mut self) {
        for w in ["integer", "`(`", "`t`", "`geom`", "`root<n>`"] {
            self.note(w);
        }
        if let Some(v) = self.amb().field.var_name() {
            self.note(&format!("`{v}`"));
        }
    }

    fn root(&self, n: u64, c: &Coeff, at: usize) -> PResult<Coeff> {
        let k = &self.amb().field;
        let p = k.characteristic();
        let mut d = 0;
        let mut m = n;
        while p > 1 && m > 1 && m.is_multiple_of(p) {
            m /= p;
            d += 1;
        }
        if p < 2 || m != 1 || d == 0 {
            return self.error_at(
                at,
                format!("root{n} is not a p-power root over {}", k.literal()),
            );
        }
        let r = match k {
            Field::PerfectHull { .. } => k.ph_root_of(c, d),
            _ => (0..d).try_fold(c.clone(), |a, _| k.p_th_root(&a)),
        };
        r.or_else(|e| self.error_at(at, e.to_string()))
    }
}

fn constant_of(x: &Series) -> Option<Coeff> {
    let t = x.terms()?;
    match t {
        [] => Some(x.field().zero()),
        [(e, c)] if e.is_zero() => Some(c.clone()),
        _ => None,
    }
}

fn whole<T>(
    text: &str,
    amb: Option<&Arc<Ambient>>,
    f: impl FnOnce(&mut Parser) -> PResult<T>,
) -> PResult<T> {
    let mut p = Parser::new(text);
    p.amb = amb;
    let v = f(&mut p)?;
    p.end()?;
    Ok(v)
}

pub fn parse_group(text: &str) -> PResult<Group> {
    whole(text, None, |p| p.group())
}

pub fn parse_field(text: &str) -> PResult<Field> {
    whole(text, None, |p| p.field())
}

pub fn parse_elem(text: &str, g: &Group) -> PResult<Elem> {
    whole(text, None, |p| p.elem(g))
}

pub fn parse_rational(text: &str) -> PResult<Q64> {
    whole(text, None, |p| p.rational())
}

pub fn parse_cut(text: &str, g: &Group) -> PResult<Cut> {
    whole(text, None, |p| p.cut(g))
}

pub fn parse_series(text: &str, amb: &Arc<Ambient>) -> PResult<Series> {
    whole(text, Some(amb), |p| p.sum())
}

/// A coefficient: any series expression that evaluates to a constant.
pub fn parse_coeff(text: &str, amb: &Arc<Ambient>) -> PResult<Coeff> {
    let s = parse_series(text, amb)?;
    constant_of(&s).ok_or_else(|| ParseError {
        line: 1,
        col: 1,
        expected: Vec::new(),
        found: String::new(),
        message: Some(format!("`{text}` is not a constant")),
    })
}
