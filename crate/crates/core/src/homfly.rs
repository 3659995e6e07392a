//! Colored HOMFLY-PT data as Laurent polynomials in `a` over rational
//! functions in `s = q^(1/2)`, the `a^-1 = 0` specialization, and comparison
//! with total 2-graded representation numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::knotlib::KnotMeta;
use crate::ncdga::DgaPresentation;
use crate::repcount::{self, RepError};
use crate::sqrtq::SqrtQ;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomflyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot divide by a polynomial with several powers of a")]
    NonMonomialDivisor,
    #[error("positive a-degree {0}: the Legendrian degree bound deg_a P <= -n|r| forbids it, so a^-1 = 0 is undefined")]
    PositiveADegree(i64),
    #[error("bad header line: {0}")]
    Header(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomial in `s` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Poly {
        Poly(vec![c]).trimmed()
    }

    fn monomial(k: usize) -> Poly {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        Poly(v)
    }

    fn trimmed(mut self) -> Poly {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(BigRational::zero);
        Poly((0..n).map(|i| get(self, i) + get(o, i)).collect()).trimmed()
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(vec![]);
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in o.0.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        Poly(v).trimmed()
    }

    fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let mut r = self.clone();
        let mut quo = vec![BigRational::zero(); self.0.len().saturating_sub(d.0.len()) + 1];
        let lead = d.lead();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let c = r.lead() / &lead;
            quo[shift] = c.clone();
            let sub = Poly::monomial(shift).mul(d).scale(&-c);
            r = r.add(&sub);
        }
        (Poly(quo).trimmed(), r)
    }

    fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    fn eval(&self, q: u64) -> SqrtQ {
        self.0.iter().enumerate().fold(SqrtQ::zero(q), |acc, (i, c)| acc.add(&SqrtQ::q_half_power(i as i64, q).scale(c)))
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                2 => "q".to_string(),
                i if i % 2 == 0 => format!("q^{}", i / 2),
                i => format!("q^({i}/2)"),
            };
            match (mono.is_empty(), a.is_one()) {
                (true, _) => out.push_str(&a.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => out.push_str(&format!("{a}*{mono}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Reduced rational function in `s` with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn new(num: Poly, den: Poly) -> Option<RatFunc> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let inv = den.lead().recip();
        Some(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: Poly(vec![]), den: Poly::constant(BigRational::one()) }
    }

    pub fn constant(c: BigRational) -> RatFunc {
        RatFunc { num: Poly::constant(c), den: Poly::constant(BigRational::one()) }
    }

    /// `s^k` for any integer `k`.
    pub fn s_power(k: i64) -> RatFunc {
        let m = Poly::monomial(k.unsigned_abs() as usize);
        let one = Poly::constant(BigRational::one());
        if k >= 0 {
            RatFunc { num: m, den: one }
        } else {
            RatFunc { num: one, den: m }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.scale(&rat(-1)), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Option<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, q: u64) -> Option<SqrtQ> {
        self.num.eval(q).div(&self.den.eval(q))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.0.len() == 1 {
            write!(f, "({})", self.num.render())
        } else {
            write!(f, "({})/({})", self.num.render(), self.den.render())
        }
    }
}

/// Laurent polynomial in `a` with [`RatFunc`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoVarPoly {
    pub terms: BTreeMap<i64, RatFunc>,
}

impl TwoVarPoly {
    pub fn zero() -> Self {
        TwoVarPoly::default()
    }

    pub fn monomial(a: i64, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(a, c);
        }
        TwoVarPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_a(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, o: &TwoVarPoly) -> TwoVarPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let sum = terms.get(k).map_or_else(|| c.clone(), |x| x.add(c));
            if sum.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, sum);
            }
        }
        TwoVarPoly { terms }
    }

    pub fn neg(&self) -> TwoVarPoly {
        TwoVarPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn mul(&self, o: &TwoVarPoly) -> TwoVarPoly {
        let mut out = TwoVarPoly::zero();
        for (i, x) in &self.terms {
            for (j, y) in &o.terms {
                out = out.add(&TwoVarPoly::monomial(i + j, x.mul(y)));
            }
        }
        out
    }

    pub fn div(&self, o: &TwoVarPoly) -> Result<TwoVarPoly, HomflyError> {
        let mut it = o.terms.iter();
        match (it.next(), it.next()) {
            (None, _) => Err(HomflyError::DivisionByZero),
            (Some((k, c)), None) => {
                let inv = TwoVarPoly::monomial(-k, c.inv().ok_or(HomflyError::DivisionByZero)?);
                Ok(self.mul(&inv))
            }
            _ => Err(HomflyError::NonMonomialDivisor),
        }
    }

    pub fn pow(&self, e: i64) -> Result<TwoVarPoly, HomflyError> {
        let base = if e < 0 { TwoVarPoly::monomial(0, RatFunc::constant(BigRational::one())).div(self)? } else { self.clone() };
        let mut acc = TwoVarPoly::monomial(0, RatFunc::constant(BigRational::one()));
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Multiplies by `(a^n q^{n(n-1)/2})^k`, the change of framing by `k`.
    pub fn reframe(&self, n: usize, k: i64) -> TwoVarPoly {
        let n = n as i64;
        let factor = TwoVarPoly::monomial(n * k, RatFunc::s_power(n * (n - 1) * k));
        self.mul(&factor)
    }
}

impl fmt::Display for TwoVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "a*{c}")?,
                k => write!(f, "a^{k}*{c}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, HomflyError> {
        Err(HomflyError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, HomflyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64, HomflyError> {
        let neg = self.eat(b'-');
        let v: i64 = self.integer()?.try_into().or_else(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    /// An exponent as a multiple of 1/2: `k`, `-k`, `(k)`, `(k/2)`.
    fn half_exponent(&mut self) -> Result<i64, HomflyError> {
        if self.eat(b'(') {
            let num = self.small_int()?;
            let halves = if self.eat(b'/') {
                let den = self.small_int()?;
                match den {
                    1 => 2 * num,
                    2 => num,
                    _ => return self.err("only halves are allowed in exponents"),
                }
            } else {
                2 * num
            };
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(halves)
        } else {
            Ok(2 * self.small_int()?)
        }
    }

    fn expr(&mut self) -> Result<TwoVarPoly, HomflyError> {
        let mut acc = if self.eat(b'-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TwoVarPoly, HomflyError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.power()?)?;
            } else if matches!(self.peek(), Some(b'(' | b'a' | b'q' | b's' | b'z')) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<TwoVarPoly, HomflyError> {
        let c = self.peek();
        match c {
            Some(b'q') | Some(b's') | Some(b'a') => {
                self.pos += 1;
                let halves = if self.eat(b'^') { self.half_exponent()? } else { 2 };
                match c {
                    Some(b'a') => {
                        if halves % 2 != 0 {
                            return self.err("a takes integer exponents");
                        }
                        Ok(TwoVarPoly::monomial(halves / 2, RatFunc::constant(BigRational::one())))
                    }
                    Some(b'q') => Ok(TwoVarPoly::monomial(0, RatFunc::s_power(halves))),
                    _ => {
                        if halves % 2 != 0 {
                            return self.err("s takes integer exponents");
                        }
                        Ok(TwoVarPoly::monomial(0, RatFunc::s_power(halves / 2)))
                    }
                }
            }
            _ => {
                let base = self.atom()?;
                if self.eat(b'^') {
                    let e = self.small_int_or_paren()?;
                    base.pow(e)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn small_int_or_paren(&mut self) -> Result<i64, HomflyError> {
        if self.eat(b'(') {
            let v = self.small_int()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(v)
        } else {
            self.small_int()
        }
    }

    fn atom(&mut self) -> Result<TwoVarPoly, HomflyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(b'z') => {
                self.pos += 1;
                let z = RatFunc::s_power(1).add(&RatFunc::s_power(-1).neg());
                Ok(TwoVarPoly::monomial(0, z))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(TwoVarPoly::monomial(0, RatFunc::constant(BigRational::from_integer(n))))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `+ - * /`, parentheses, integers, `a`, `q`, `s = q^(1/2)` and
/// `z = s - 1/s`, with exponents like `a^-2`, `q^(1/2)`, `q^(-3/2)`.
pub fn parse_poly(text: &str) -> Result<TwoVarPoly, HomflyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// The `a^0` coefficient, defined when no positive power of `a` occurs.
pub fn specialize_a_inv_zero(p: &TwoVarPoly) -> Result<RatFunc, HomflyError> {
    match p.deg_a() {
        Some(d) if d > 0 => Err(HomflyError::PositiveADegree(d)),
        _ => Ok(p.terms.get(&0).cloned().unwrap_or_else(RatFunc::zero)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Framing {
    Legendrian,
    Writhe(i64),
}

/// A data file: header lines `# knot <name>`, `# n <n>`, `# framing
/// legendrian|<w>`, then one expression (possibly spread over lines).
#[derive(Debug, Clone)]
pub struct HomflyData {
    pub knot: String,
    pub n: usize,
    pub framing: Framing,
    pub poly: TwoVarPoly,
}

impl HomflyData {
    pub fn parse(text: &str) -> Result<HomflyData, HomflyError> {
        let (mut knot, mut n, mut framing) = (String::new(), 1, Framing::Legendrian);
        let mut body = String::new();
        for line in text.lines() {
            if let Some(h) = line.trim().strip_prefix('#') {
                let mut parts = h.split_whitespace();
                let bad = || HomflyError::Header(line.into());
                match (parts.next(), parts.next()) {
                    (Some("knot"), Some(v)) => knot = v.into(),
                    (Some("n"), Some(v)) => n = v.parse().map_err(|_| bad())?,
                    (Some("framing"), Some("legendrian")) => framing = Framing::Legendrian,
                    (Some("framing"), Some(v)) => framing = Framing::Writhe(v.parse().map_err(|_| bad())?),
                    _ => {}
                }
            } else {
                body.push_str(line);
                body.push(' ');
            }
        }
        Ok(HomflyData { knot, n, framing, poly: parse_poly(&body)? })
    }

    /// The polynomial in the Legendrian framing `w = tb`.
    pub fn legendrian(&self, tb: Option<i64>) -> Option<TwoVarPoly> {
        match self.framing {
            Framing::Legendrian => Some(self.poly.clone()),
            Framing::Writhe(w) => Some(self.poly.reframe(self.n, tb? - w)),
        }
    }
}

pub const M52_N2: &str = include_str!("../data/m52_n2.poly");
pub const UNKNOT_FRAMED0: &str = include_str!("../data/unknot_framed0.poly");

#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub q: u64,
    pub homfly: SqrtQ,
    pub rep: SqrtQ,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub specialization: String,
    pub rows: Vec<CompareRow>,
    pub all_equal: bool,
    pub first_mismatch: Option<u64>,
}

/// Evaluates `P|_{a^-1=0}` at each `q` against `Rep_2(K, F_q^n)`.
pub fn compare_with_rep(p: &TwoVarPoly, knot: &DgaPresentation, n: usize, qs: &[u64]) -> Result<CompareReport, HomflyError> {
    let spec = specialize_a_inv_zero(p)?;
    let mut rows = Vec::new();
    for &q in qs {
        let homfly = spec.eval(q).ok_or(HomflyError::DivisionByZero)?;
        let rep = repcount::total_rep_number(knot, n, 2, q)?;
        rows.push(CompareRow { q, equal: homfly == rep, homfly, rep });
    }
    let first_mismatch = rows.iter().find(|r| !r.equal).map(|r| r.q);
    Ok(CompareReport { specialization: spec.to_string(), all_equal: first_mismatch.is_none(), first_mismatch, rows })
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub deg_a: Option<i64>,
    pub bound: i64,
    pub within_bound: bool,
    pub tb: Option<i64>,
    pub deg_a_unframed: Option<i64>,
    pub sharp: Option<bool>,
    pub witness_q: Option<u64>,
    pub witness_found: Option<bool>,
    pub note: Option<String>,
}

/// Checks `deg_a P <= -n|r|` and, given `tb`, whether `tb + |r| = -deg_a P̂ / n`
/// with `P̂ = (a^n q^{n(n-1)/2})^{-tb} P`; a representation witness is searched at q = 2.
pub fn check_degree_bounds(p: &TwoVarPoly, meta: &KnotMeta, n: usize, knot: Option<&DgaPresentation>) -> DegreeReport {
    let deg = p.deg_a();
    let r = meta.rotation.abs();
    let bound = -(n as i64) * r;
    let within_bound = deg.is_none_or(|d| d <= bound);
    let deg_hat = match (deg, meta.tb) {
        (Some(d), Some(tb)) => Some(d - n as i64 * tb),
        _ => None,
    };
    let sharp = match (deg_hat, meta.tb) {
        (Some(dh), Some(tb)) => Some((tb + r) * n as i64 == -dh),
        _ => None,
    };
    let witness_found = knot.and_then(|k| repcount::total_rep_count(k, n, 2, 2).ok()).map(|c| c > 0);
    let note = (!within_bound).then(|| "positive a-degree: the data is not in the Legendrian framing".to_string());
    DegreeReport {
        n,
        deg_a: deg,
        bound,
        within_bound,
        tb: meta.tb,
        deg_a_unframed: deg_hat,
        sharp,
        witness_q: witness_found.map(|_| 2),
        witness_found,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotlib::builtin;

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn closed_form(q: u64) -> SqrtQ {
        let q = q as i64;
        let top = q.pow(8) - q.pow(7) - q.pow(6) + 2 * q.pow(5) - q.pow(3) + q * q;
        let bottom = q * q * (q * q - 1) * (q * q - q);
        SqrtQ::rational(frac(top, bottom), q as u64)
    }

    #[test]
    fn parse_basics() {
        assert!(parse_poly("0").unwrap().is_zero());
        let p = parse_poly("q^-5*a^-2*(q^4 - q^2 + q + 1)").unwrap();
        assert_eq!(p.terms.keys().copied().collect::<Vec<_>>(), [-2]);
        let u = parse_poly("(a - a^-1)/(q^(1/2) - q^(-1/2))").unwrap();
        assert_eq!(u, parse_poly("(a - a^-1)/z").unwrap());
        assert_eq!(u.deg_a(), Some(1));
        assert!(matches!(parse_poly("1/(q - q)"), Err(HomflyError::DivisionByZero)));
        assert!(matches!(parse_poly("1/(a + 1)"), Err(HomflyError::NonMonomialDivisor)));
        assert!(parse_poly("q^(1/3)").is_err());
        assert!(parse_poly("(a + 1").is_err());
    }

    #[test]
    fn m52_specialization() {
        let data = HomflyData::parse(M52_N2).unwrap();
        assert_eq!(data.n, 2);
        let spec = specialize_a_inv_zero(&data.poly).unwrap();
        for q in [2, 3, 4, 5] {
            assert_eq!(spec.eval(q).unwrap(), closed_form(q));
        }
        assert_eq!(spec.eval(2).unwrap(), SqrtQ::rational(frac(124, 24), 2));
        let k = builtin("m52").unwrap().dga;
        assert!(compare_with_rep(&data.poly, &k, 2, &[2, 3]).unwrap().all_equal);
        let bumped = data.poly.add(&parse_poly("q^-3").unwrap());
        assert_eq!(compare_with_rep(&bumped, &k, 2, &[2]).unwrap().first_mismatch, Some(2));
    }

    #[test]
    fn unknot_framing() {
        let data = HomflyData::parse(UNKNOT_FRAMED0).unwrap();
        assert!(matches!(specialize_a_inv_zero(&data.poly), Err(HomflyError::PositiveADegree(1))));
        let rec = builtin("unknot").unwrap();
        let leg = data.legendrian(rec.meta.tb).unwrap();
        let spec = specialize_a_inv_zero(&leg).unwrap();
        for q in [2, 3] {
            assert_eq!(spec.eval(q).unwrap(), SqrtQ::z(q).inv().unwrap());
        }
        assert!(compare_with_rep(&leg, &rec.dga, 1, &[2, 3]).unwrap().all_equal);
        let report = check_degree_bounds(&data.poly, &rec.meta, 1, None);
        assert!(!report.within_bound && report.note.is_some());
        let report = check_degree_bounds(&leg, &rec.meta, 1, Some(&rec.dga));
        assert_eq!((report.within_bound, report.sharp, report.witness_found), (true, Some(true), Some(true)));
    }

    #[test]
    fn positive_degree_rejected() {
        assert!(matches!(specialize_a_inv_zero(&parse_poly("a*q").unwrap()), Err(HomflyError::PositiveADegree(1))));
    }

    proptest::proptest! {
        #[test]
        fn specialization_is_multiplicative(c1 in -3i64..4, c2 in -3i64..4, e1 in -2i64..3, e2 in -2i64..3, k in 1i64..3) {
            let p = parse_poly(&format!("{c1}*q^{e1} + a^-{k}*(q + 1)")).unwrap();
            let r = parse_poly(&format!("({c2} - q^({e2}/2))/(q^(1/2) - q^(-1/2)) - a^-1*q")).unwrap();
            let lhs = specialize_a_inv_zero(&p.mul(&r)).unwrap();
            let rhs = specialize_a_inv_zero(&p).unwrap().mul(&specialize_a_inv_zero(&r).unwrap());
            proptest::prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_round_trip(c1 in -3i64..4, e1 in -3i64..4, k in -2i64..2) {
            let p = parse_poly(&format!("a^{k}*({c1}*q^({e1}/2) + 1)/(q - 1) + a^-3*z")).unwrap();
            let again = parse_poly(&p.to_string()).unwrap();
            proptest::prop_assert_eq!(&again, &p);
            proptest::prop_assert_eq!(specialize_a_inv_zero(&again).ok(), specialize_a_inv_zero(&p).ok());
        }
    }
}
