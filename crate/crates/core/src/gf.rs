//! Finite fields `F_q`.
//!
//! Elements are plain `u16` indices in `0..q`. For a prime field the index is
//! the residue; for `F_{p^k}` it is the base-`p` value of the coefficient
//! vector `(c_0, .., c_{k-1})` of `c_0 + c_1 g + .. + c_{k-1} g^{k-1}`, where
//! `g` is a root of the lexicographically least monic irreducible of degree
//! `k`. Fields with `q <= 256` use lookup tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Fe = u16;

const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} is too large")]
    TooLarge(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("element of F_{left} combined with element of F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("{value} is not an element of F_{q}")]
    OutOfRange { value: u64, q: u32 },
}

/// An element tagged with the order of its field, for checked arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub q: u32,
    pub value: Fe,
}

#[derive(Debug, Clone)]
pub struct Field {
    q: u32,
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Field {}

pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut r, mut k) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

// Remainder of `a` modulo the monic polynomial `m`, coefficients low to high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
    }
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        for low in 0..p.pow(d as u32) {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|low| {
            let mut m = digits(low, p, k);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl Field {
    pub fn new(q: u64) -> Result<Field, GfError> {
        let (p, k) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        if q > 1 << 16 {
            return Err(GfError::TooLarge(q));
        }
        let modulus = if k == 1 { vec![0, 1] } else { least_irreducible(p, k) };
        let mut f = Field { q: q as u32, p, k, modulus, tables: None };
        if f.q <= TABLE_LIMIT {
            f.tables = Some(f.build_tables());
        }
        Ok(f)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut t = Tables { add: vec![0; q * q], mul: vec![0; q * q], neg: vec![0; q], inv: vec![0; q] };
        for a in 0..q {
            t.neg[a] = self.slow_neg(a as Fe);
            for b in 0..q {
                t.add[a * q + b] = self.slow_add(a as Fe, b as Fe);
                t.mul[a * q + b] = self.slow_mul(a as Fe, b as Fe);
            }
        }
        for a in 1..q {
            t.inv[a] = (1..q).find(|&b| t.mul[a * q + b] == 1).unwrap() as Fe;
        }
        t
    }

    fn slow_add(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            return ((a as u32 + b as u32) % self.p) as Fe;
        }
        let (x, y) = (digits(a as u32, self.p, self.k), digits(b as u32, self.p, self.k));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        undigits(&s, self.p) as Fe
    }

    fn slow_neg(&self, a: Fe) -> Fe {
        let x = digits(a as u32, self.p, self.k);
        let s: Vec<u32> = x.iter().map(|u| (self.p - u) % self.p).collect();
        undigits(&s, self.p) as Fe
    }

    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            return (a as u64 * b as u64 % self.p as u64) as Fe;
        }
        let (x, y) = (digits(a as u32, self.p, self.k), digits(b as u32, self.p, self.k));
        let mut prod = vec![0u32; 2 * self.k as usize - 1];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + *u as u64 * *v as u64) % self.p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        undigits(&r, self.p) as Fe
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The class of `g` in the element numbering (`p` itself for `k > 1`).
    pub fn generator_root(&self) -> Fe {
        if self.k == 1 {
            0
        } else {
            self.p as Fe
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.tables {
            Some(t) => t.add[a as usize * self.q as usize + b as usize],
            None => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.tables {
            Some(t) => t.mul[a as usize * self.q as usize + b as usize],
            None => self.slow_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.slow_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => t.inv[a as usize],
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// Image of an integer under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q as Fe
    }

    pub fn units(&self) -> impl Iterator<Item = Fe> {
        1..self.q as Fe
    }

    pub fn multiplicative_order(&self, a: Fe) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, GfError> {
        if value >= self.q as u64 {
            return Err(GfError::OutOfRange { value, q: self.q });
        }
        Ok(FieldElement { q: self.q, value: value as Fe })
    }

    fn same(&self, a: FieldElement, b: FieldElement) -> Result<(), GfError> {
        for x in [a, b] {
            if x.q != self.q {
                return Err(GfError::FieldMismatch { left: self.q, right: x.q });
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        self.same(a, b)?;
        Ok(FieldElement { q: self.q, value: self.add(a.value, b.value) })
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        self.same(a, b)?;
        Ok(FieldElement { q: self.q, value: self.mul(a.value, b.value) })
    }

    pub fn checked_inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.same(a, a)?;
        let value = self.inv(a.value).ok_or(GfError::ZeroInverse)?;
        Ok(FieldElement { q: self.q, value })
    }

    /// Display form: the residue for prime fields, otherwise a polynomial in `g`.
    pub fn format(&self, a: Fe) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let ds = digits(a as u32, self.p, self.k);
        let terms: Vec<String> = ds
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .rev()
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".into(),
                (1, c) => format!("{c}g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}g^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(Field::new(1), Err(GfError::NotPrimePower(1)));
        assert_eq!(Field::new(6), Err(GfError::NotPrimePower(6)));
        assert_eq!(Field::new(12).unwrap_err(), GfError::NotPrimePower(12));
    }

    #[test]
    fn f4_generator_satisfies_its_modulus() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = f.generator_root();
        assert_eq!(f.mul(g, g), f.add(g, 1));
    }

    #[test]
    fn least_moduli() {
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn checked_errors() {
        let f = Field::new(5).unwrap();
        let g = Field::new(7).unwrap();
        let zero = f.element(0).unwrap();
        assert_eq!(f.checked_inv(zero), Err(GfError::ZeroInverse));
        let a = f.element(2).unwrap();
        let b = g.element(2).unwrap();
        assert!(matches!(f.checked_add(a, b), Err(GfError::FieldMismatch { .. })));
        assert!(f.element(5).is_err());
    }

    #[test]
    fn large_prime_without_tables() {
        let f = Field::new(65521).unwrap();
        assert_eq!(f.mul(f.inv(12345).unwrap(), 12345), 1);
    }

    fn orders() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 101])
    }

    proptest! {
        #[test]
        fn multiplicative_group_is_cyclic(q in orders()) {
            let f = Field::new(q).unwrap();
            let n = q - 1;
            prop_assert!(f.units().any(|a| f.multiplicative_order(a) == Some(n)));
            for a in f.units() {
                prop_assert_eq!(f.pow(a, n), 1);
            }
        }

        #[test]
        fn frobenius_is_additive(q in orders(), a in 0u64..101, b in 0u64..101) {
            let f = Field::new(q).unwrap();
            let (a, b) = ((a % q) as Fe, (b % q) as Fe);
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        }

        #[test]
        fn field_axioms(q in orders(), a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = Field::new(q).unwrap();
            let (a, b, c) = ((a % q) as Fe, (b % q) as Fe, (c % q) as Fe);
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
