//! Noncommutative Laurent polynomials and semi-free DGA presentations.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type GenId = u32;

/// A generator or, for invertible generators, its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GenId,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: GenId) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(gen: GenId) -> Self {
        Letter { gen, inv: true }
    }

    fn exponent(self) -> i8 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.gen, self.exponent()).cmp(&(other.gen, other.exponent()))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A freely reduced word, ordered by length and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Concatenation followed by cancellation of `t t^{-1}` pairs.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            match out.last() {
                Some(&prev) if prev.gen == l.gen && prev.inv != l.inv => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }
}

/// Integer combination of words; always kept in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct NcPoly {
    terms: BTreeMap<Word, i64>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(Word::empty(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word(vec![l]), 1)
    }

    pub fn gen(g: GenId) -> Self {
        Self::letter(Letter::new(g))
    }

    pub fn inv_gen(g: GenId) -> Self {
        Self::letter(Letter::inverse(g))
    }

    pub fn word(w: Word, c: i64) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(Word::empty().concat(&w), c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> NcPoly {
        let mut out = NcPoly::zero();
        if c != 0 {
            for (w, d) in self.terms() {
                out.terms.insert(w.clone(), d * c);
            }
        }
        out
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, c) in self.terms() {
            for (b, d) in other.terms() {
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }

    /// The generators occurring in the polynomial.
    pub fn support(&self) -> BTreeSet<GenId> {
        self.terms.keys().flat_map(|w| w.0.iter().map(|l| l.gen)).collect()
    }

    /// Ring homomorphism determined by its values on letters.
    pub fn substitute(&self, image: &impl Fn(Letter) -> NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in self.terms() {
            let mut acc = NcPoly::constant(c);
            for &l in &w.0 {
                acc = acc.mul(&image(l));
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn format(&self, name: &impl Fn(GenId) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let body: Vec<String> = w
                .0
                .iter()
                .map(|l| if l.inv { format!("{}^-1", name(l.gen)) } else { name(l.gen) })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            let a = c.abs();
            match (body.is_empty(), a) {
                (true, _) => {
                    let _ = write!(s, "{a}");
                }
                (false, 1) => s.push_str(&body.join("*")),
                (false, _) => {
                    let _ = write!(s, "{a}*{}", body.join("*"));
                }
            }
        }
        s
    }
}

/// Square matrix with [`NcPoly`] entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcMatrix {
    pub n: usize,
    pub entries: Vec<NcPoly>,
}

impl NcMatrix {
    pub fn zero(n: usize) -> Self {
        NcMatrix { n, entries: vec![NcPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = NcPoly::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &NcPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: NcPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn mul(&self, other: &NcMatrix) -> NcMatrix {
        let n = self.n;
        let mut out = NcMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &NcMatrix) -> NcMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        NcMatrix { n: self.n, entries }
    }

    pub fn sub(&self, other: &NcMatrix) -> NcMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        NcMatrix { n: self.n, entries }
    }

    pub fn scale(&self, c: i64) -> NcMatrix {
        NcMatrix { n: self.n, entries: self.entries.iter().map(|a| a.scale(c)).collect() }
    }

    /// Diagonal matrix with entries `+-1`.
    pub fn signs(signs: &[i64]) -> NcMatrix {
        let mut m = NcMatrix::zero(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            m.entries[i * signs.len() + i] = NcPoly::constant(s);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NcPoly::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub invertible: bool,
}

/// The basepoints lying on one link component, in orientation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub basepoints: Vec<GenId>,
    pub initial: GenId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgaError {
    #[error("invertible generator {0} has odd degree")]
    OddInvertible(String),
    #[error("invertible generator {0} must be a cycle")]
    InvertibleNotClosed(String),
    #[error("basepoint {0} is not on exactly one component")]
    Basepoint(String),
    #[error("{0} is not an invertible generator")]
    NotInvertible(String),
    #[error("generator name {0} is already taken")]
    NameClash(String),
    #[error("cannot split into {0} pieces")]
    BadSplit(usize),
}

/// A semi-free DGA over `Z[t_i^{+-1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgaPresentation {
    pub name: String,
    pub rotation: i64,
    pub generators: Vec<Generator>,
    pub differential: Vec<NcPoly>,
    pub components: Vec<Component>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DgaCheck {
    pub grading_ok: bool,
    pub squares_to_zero: bool,
    pub failures: Vec<String>,
}

impl DgaCheck {
    pub fn ok(&self) -> bool {
        self.grading_ok && self.squares_to_zero
    }
}

impl DgaPresentation {
    pub fn new(name: impl Into<String>, rotation: i64) -> Self {
        DgaPresentation {
            name: name.into(),
            rotation,
            generators: Vec::new(),
            differential: Vec::new(),
            components: Vec::new(),
            note: None,
        }
    }

    pub fn add_generator(&mut self, name: impl Into<String>, degree: i64, invertible: bool) -> GenId {
        self.generators.push(Generator { name: name.into(), degree, invertible });
        self.differential.push(NcPoly::zero());
        (self.generators.len() - 1) as GenId
    }

    pub fn set_differential(&mut self, g: GenId, p: NcPoly) {
        self.differential[g as usize] = p;
    }

    pub fn gen(&self, g: GenId) -> &Generator {
        &self.generators[g as usize]
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as GenId)
    }

    pub fn name_of(&self, g: GenId) -> String {
        self.generators[g as usize].name.clone()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn invertibles(&self) -> Vec<GenId> {
        (0..self.len() as GenId).filter(|&g| self.gen(g).invertible).collect()
    }

    pub fn chords(&self) -> Vec<GenId> {
        (0..self.len() as GenId).filter(|&g| !self.gen(g).invertible).collect()
    }

    pub fn format_poly(&self, p: &NcPoly) -> String {
        p.format(&|g| self.name_of(g))
    }

    pub fn letter_degree(&self, l: Letter) -> i64 {
        let d = self.gen(l.gen).degree;
        if l.inv {
            -d
        } else {
            d
        }
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.0.iter().map(|&l| self.letter_degree(l)).sum()
    }

    pub fn validate(&self) -> Result<(), DgaError> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.invertible {
                if g.degree % 2 != 0 {
                    return Err(DgaError::OddInvertible(g.name.clone()));
                }
                if !self.differential[i].is_zero() {
                    return Err(DgaError::InvertibleNotClosed(g.name.clone()));
                }
                let hits = self.components.iter().filter(|c| c.basepoints.contains(&(i as GenId))).count();
                if hits != 1 {
                    return Err(DgaError::Basepoint(g.name.clone()));
                }
            }
        }
        for c in &self.components {
            for &b in c.basepoints.iter().chain(std::iter::once(&c.initial)) {
                if !self.gen(b).invertible {
                    return Err(DgaError::NotInvertible(self.name_of(b)));
                }
            }
            if !c.basepoints.contains(&c.initial) {
                return Err(DgaError::Basepoint(self.name_of(c.initial)));
            }
        }
        Ok(())
    }

    /// Extends the differential to all of the algebra by the graded Leibniz rule.
    pub fn apply_diff(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut prefix_deg = 0;
            for (i, &l) in w.0.iter().enumerate() {
                if !l.inv {
                    let dl = &self.differential[l.gen as usize];
                    if !dl.is_zero() {
                        let sign = if prefix_deg % 2 == 0 { c } else { -c };
                        let left = NcPoly::word(Word(w.0[..i].to_vec()), sign);
                        let right = NcPoly::word(Word(w.0[i + 1..].to_vec()), 1);
                        out = out.add(&left.mul(dl).mul(&right));
                    }
                }
                prefix_deg += self.letter_degree(l);
            }
        }
        out
    }

    pub fn check(&self) -> DgaCheck {
        let mut failures = Vec::new();
        let mut grading_ok = true;
        let mut squares_to_zero = true;
        for (i, g) in self.generators.iter().enumerate() {
            let d = &self.differential[i];
            if g.invertible && !d.is_zero() {
                grading_ok = false;
                failures.push(format!("d({}) must vanish", g.name));
            }
            for (w, _) in d.terms() {
                let wd = self.word_degree(w);
                if wd != g.degree - 1 {
                    grading_ok = false;
                    failures.push(format!("d({}) has a term of degree {wd}, expected {}", g.name, g.degree - 1));
                    break;
                }
            }
            let dd = self.apply_diff(d);
            if !dd.is_zero() {
                squares_to_zero = false;
                failures.push(format!("d^2({}) = {}", g.name, self.format_poly(&dd)));
            }
        }
        DgaCheck { grading_ok, squares_to_zero, failures }
    }

    /// Number of non-invertible generators in each degree.
    pub fn degree_distribution(&self) -> BTreeMap<i64, usize> {
        let mut dist = BTreeMap::new();
        for g in self.generators.iter().filter(|g| !g.invertible) {
            *dist.entry(g.degree).or_insert(0) += 1;
        }
        dist
    }

    fn fresh_name(&self, base: &str) -> String {
        if self.find(base).is_none() {
            return base.to_string();
        }
        (2..).map(|i| format!("{base}{i}")).find(|n| self.find(n).is_none()).unwrap()
    }

    /// Replaces the basepoint `t` by `n` consecutive basepoints.
    pub fn split_basepoint(&self, t: GenId, n: usize) -> Result<DgaPresentation, DgaError> {
        if n == 0 {
            return Err(DgaError::BadSplit(n));
        }
        if !self.gen(t).invertible {
            return Err(DgaError::NotInvertible(self.name_of(t)));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let base = self.name_of(t);
        let mut out = self.clone();
        out.generators[t as usize].name = format!("{base}_1");
        let mut pieces = vec![t];
        for i in 2..=n {
            let name = format!("{base}_{i}");
            if self.find(&name).is_some() {
                return Err(DgaError::NameClash(name));
            }
            pieces.push(out.add_generator(name, 0, true));
        }
        let forward: Vec<Letter> = pieces.iter().map(|&g| Letter::new(g)).collect();
        let backward: Vec<Letter> = pieces.iter().rev().map(|&g| Letter::inverse(g)).collect();
        let image = |l: Letter| {
            if l.gen != t {
                NcPoly::letter(l)
            } else if l.inv {
                NcPoly::word(Word(backward.clone()), 1)
            } else {
                NcPoly::word(Word(forward.clone()), 1)
            }
        };
        for d in out.differential.iter_mut() {
            *d = d.substitute(&image);
        }
        for c in out.components.iter_mut() {
            if let Some(pos) = c.basepoints.iter().position(|&b| b == t) {
                c.basepoints.splice(pos..=pos, pieces.iter().copied());
            }
        }
        Ok(out)
    }

    /// Adds a canceling pair `a`, `b` of degrees `k`, `k - 1` with `d a = b`.
    pub fn stabilize(&self, k: i64) -> DgaPresentation {
        let mut out = self.clone();
        let a_name = out.fresh_name("sa");
        let a = out.add_generator(a_name, k, false);
        let b_name = out.fresh_name("sb");
        let b = out.add_generator(b_name, k - 1, false);
        out.set_differential(a, NcPoly::gen(b));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_order() {
        let t = Letter::new(0);
        let ti = Letter::inverse(0);
        let a = Letter::new(1);
        let w = Word(vec![a, t]).concat(&Word(vec![ti, a]));
        assert_eq!(w, Word(vec![a, a]));
        let p = NcPoly::gen(1).add(&NcPoly::one()).add(&NcPoly::inv_gen(0));
        let order: Vec<usize> = p.terms().map(|(w, _)| w.0.len()).collect();
        assert_eq!(order, vec![0, 1, 1]);
        let first = p.terms().nth(1).unwrap().0.clone();
        assert_eq!(first, Word(vec![ti]));
    }

    #[test]
    fn like_terms_merge() {
        let a = NcPoly::gen(1);
        let p = a.add(&a).sub(&a.scale(2));
        assert!(p.is_zero());
        let q = NcPoly::gen(0).mul(&NcPoly::inv_gen(0));
        assert_eq!(q, NcPoly::one());
    }

    #[test]
    fn failing_square() {
        let mut d = DgaPresentation::new("bad", 0);
        let a = d.add_generator("a", 1, false);
        let b = d.add_generator("b", 0, false);
        d.set_differential(a, NcPoly::gen(b));
        d.set_differential(b, NcPoly::gen(a));
        let c = d.check();
        assert!(!c.squares_to_zero);
        assert!(c.failures.iter().any(|f| f.starts_with("d^2(a)")));
    }

    #[test]
    fn leibniz_sign() {
        let mut d = DgaPresentation::new("x", 0);
        let x = d.add_generator("x", 1, false);
        let y = d.add_generator("y", 1, false);
        let z = d.add_generator("z", 0, false);
        d.set_differential(y, NcPoly::gen(z));
        let dxy = d.apply_diff(&NcPoly::gen(x).mul(&NcPoly::gen(y)));
        assert_eq!(dxy, NcPoly::word(Word(vec![Letter::new(x), Letter::new(z)]), -1));
    }
}
