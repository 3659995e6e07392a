//! Exact numbers `a + b sqrt(q)` with rational `a`, `b`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtQ {
    pub a: BigRational,
    pub b: BigRational,
    pub q: u64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl SqrtQ {
    pub fn new(a: BigRational, b: BigRational, q: u64) -> Self {
        SqrtQ { a, b, q }.normalized()
    }

    pub fn rational(a: BigRational, q: u64) -> Self {
        SqrtQ { a, b: BigRational::zero(), q }
    }

    pub fn int(n: i64, q: u64) -> Self {
        Self::rational(rat(n), q)
    }

    pub fn zero(q: u64) -> Self {
        Self::int(0, q)
    }

    pub fn one(q: u64) -> Self {
        Self::int(1, q)
    }

    pub fn sqrt_q(q: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), q)
    }

    fn square_root(q: u64) -> Option<u64> {
        let r = q.sqrt();
        (r * r == q).then_some(r)
    }

    fn normalized(mut self) -> Self {
        if let Some(r) = Self::square_root(self.q) {
            self.a += &self.b * rat(r as i64);
            self.b = BigRational::zero();
        }
        self
    }

    /// `q^(k/2)`.
    pub fn q_half_power(k: i64, q: u64) -> Self {
        let base = BigRational::from_integer(BigInt::from(q));
        let whole = |e: i64| -> BigRational {
            if e >= 0 {
                num_traits::pow(base.clone(), e as usize)
            } else {
                num_traits::pow(base.recip(), (-e) as usize)
            }
        };
        if k.rem_euclid(2) == 0 {
            Self::rational(whole(k / 2), q)
        } else {
            Self::new(BigRational::zero(), whole((k - 1).div_euclid(2)), q)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &SqrtQ) -> SqrtQ {
        assert_eq!(self.q, o.q);
        SqrtQ { a: &self.a + &o.a, b: &self.b + &o.b, q: self.q }
    }

    pub fn sub(&self, o: &SqrtQ) -> SqrtQ {
        assert_eq!(self.q, o.q);
        SqrtQ { a: &self.a - &o.a, b: &self.b - &o.b, q: self.q }
    }

    pub fn neg(&self) -> SqrtQ {
        SqrtQ { a: -&self.a, b: -&self.b, q: self.q }
    }

    pub fn mul(&self, o: &SqrtQ) -> SqrtQ {
        assert_eq!(self.q, o.q);
        let qq = rat(self.q as i64);
        let a = &self.a * &o.a + &self.b * &o.b * qq;
        let b = &self.a * &o.b + &self.b * &o.a;
        SqrtQ { a, b, q: self.q }
    }

    pub fn scale(&self, c: &BigRational) -> SqrtQ {
        SqrtQ { a: &self.a * c, b: &self.b * c, q: self.q }
    }

    pub fn inv(&self) -> Option<SqrtQ> {
        let norm = &self.a * &self.a - &self.b * &self.b * rat(self.q as i64);
        if norm.is_zero() {
            return None;
        }
        Some(SqrtQ { a: &self.a / &norm, b: -&self.b / &norm, q: self.q })
    }

    pub fn div(&self, o: &SqrtQ) -> Option<SqrtQ> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i64) -> Option<SqrtQ> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = SqrtQ::one(self.q);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * (self.q as f64).sqrt()
    }

    /// The value `z = q^(1/2) - q^(-1/2)`.
    pub fn z(q: u64) -> SqrtQ {
        Self::q_half_power(1, q).sub(&Self::q_half_power(-1, q))
    }
}

impl fmt::Display for SqrtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.q),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {sign} {}*sqrt({})", self.a, self.b.abs(), self.q)
            }
        }
    }
}

impl Serialize for SqrtQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SqrtQ", 4)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("decimal", &format!("{:.12}", self.to_f64()))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let r2 = SqrtQ::sqrt_q(2);
        assert_eq!(r2.mul(&r2), SqrtQ::int(2, 2));
        let x = SqrtQ::new(rat(3), rat(1), 2);
        assert_eq!(x.mul(&x.inv().unwrap()), SqrtQ::one(2));
        assert_eq!(SqrtQ::q_half_power(-3, 2), SqrtQ::new(rat(0), BigRational::new(1.into(), 4.into()), 2));
        assert_eq!(SqrtQ::q_half_power(3, 9), SqrtQ::int(27, 9));
        assert_eq!(SqrtQ::z(4).to_string(), "3/2");
    }

    #[test]
    fn display_and_json() {
        let v = SqrtQ::new(rat(0), BigRational::new(73.into(), 8.into()), 2);
        assert_eq!(v.to_string(), "73/8*sqrt(2)");
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["a"], "0");
        assert_eq!(j["b"], "73/8");
        assert_eq!(j["q"], 2);
    }
}
