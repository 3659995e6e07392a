//! Ruling polynomial values from augmentation numbers, the satellite formula
//! relating them to representation numbers, and colored ruling polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::braid::{self, BraidWord};
use crate::gf::Field;
use crate::matrix::FqMatrix;
use crate::ncdga::DgaPresentation;
use crate::repcount::{self, aug_from_count, count_reps, GradedVS, RepError, RepProblem, TargetSpec};
use crate::satellite::{build_satellite, lambda_m, SatelliteError};
use crate::sqrtq::SqrtQ;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RulingError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Satellite(#[from] SatelliteError),
    #[error("field of order {0} is not supported")]
    Field(u64),
    #[error("window too small: the values are not consistent with any polynomial supported in [{0}, {1}]")]
    WindowTooSmall(i64, i64),
    #[error("need more points: {missing} more independent equations required")]
    NeedMorePoints { missing: usize },
    #[error("the colored ruling polynomial is not defined for m = 1")]
    MIsOne,
}

fn field(q: u64) -> Result<Field, RulingError> {
    Field::new(q).map_err(|_| RulingError::Field(q))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn z_of_q(q: u64) -> SqrtQ {
    SqrtQ::z(q)
}

/// `[r] = (q^{r/2} - q^{-r/2}) / (q^{1/2} - q^{-1/2})`.
pub fn quantum_int(r: i64, q: u64) -> SqrtQ {
    let num = SqrtQ::q_half_power(r, q).sub(&SqrtQ::q_half_power(-r, q));
    num.div(&z_of_q(q)).expect("q > 1")
}

/// `alpha_n = q^{n(n-1)/4} [n][n-1]...[1]`.
pub fn alpha_n(n: usize, q: u64) -> SqrtQ {
    let n = n as i64;
    (1..=n).fold(SqrtQ::q_half_power(n * (n - 1) / 2, q), |acc, r| acc.mul(&quantum_int(r, q)))
}

/// A Laurent polynomial in `z` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentZ {
    pub coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentZ {
    pub fn from_coeffs(pairs: &[(i64, i64)]) -> Self {
        let coeffs = pairs.iter().filter(|p| p.1 != 0).map(|&(j, c)| (j, rat(c))).collect();
        LaurentZ { coeffs }
    }

    pub fn coeff(&self, j: i64) -> BigRational {
        self.coeffs.get(&j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Whether all exponents share one parity.
    pub fn single_parity(&self) -> bool {
        let mut parities = self.coeffs.keys().map(|j| j.rem_euclid(2));
        match parities.next() {
            Some(p) => parities.all(|x| x == p),
            None => true,
        }
    }

    pub fn eval(&self, q: u64) -> SqrtQ {
        let z = z_of_q(q);
        self.coeffs.iter().fold(SqrtQ::zero(q), |acc, (&j, c)| acc.add(&z.pow(j).expect("z != 0").scale(c)))
    }
}

impl fmt::Display for LaurentZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&j, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mono = match j {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{j}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentZ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self.coeffs.iter().map(|(j, c)| (j.to_string(), c.to_string())).collect();
        map.serialize(s)
    }
}

/// Rational row reduction; returns the solution or the reason there is none.
fn solve_rational(rows: Vec<Vec<BigRational>>, unknowns: usize, window: (i64, i64)) -> Result<Vec<BigRational>, RulingError> {
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(RulingError::WindowTooSmall(window.0, window.1));
    }
    if pivots.len() < unknowns {
        return Err(RulingError::NeedMorePoints { missing: unknowns - pivots.len() });
    }
    Ok((0..unknowns).map(|c| m[c][unknowns].clone()).collect())
}

/// Recovers the Laurent polynomial `R` with `R(q^{1/2} - q^{-1/2}) = value` at each point.
pub fn interpolate_ruling(values: &[(u64, SqrtQ)], window: (i64, i64)) -> Result<LaurentZ, RulingError> {
    let (lo, hi) = window;
    let js: Vec<i64> = (lo..=hi).collect();
    let k = js.len();
    let mut rows = Vec::new();
    for (q, v) in values {
        let z = z_of_q(*q);
        let powers: Vec<SqrtQ> = js.iter().map(|&j| z.pow(j).expect("z != 0")).collect();
        let square = powers.iter().all(|p| p.b.is_zero()) && v.b.is_zero() && SqrtQ::sqrt_q(*q).b.is_zero();
        if square {
            let mut row: Vec<BigRational> = powers.iter().map(|p| p.a.clone()).collect();
            row.push(v.a.clone());
            rows.push(row);
        } else {
            let mut even: Vec<BigRational> = powers.iter().map(|p| p.a.clone()).collect();
            even.push(v.a.clone());
            let mut odd: Vec<BigRational> = powers.iter().map(|p| p.b.clone()).collect();
            odd.push(v.b.clone());
            rows.push(even);
            rows.push(odd);
        }
    }
    let sol = solve_rational(rows, k, window)?;
    let coeffs = js.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect();
    let poly = LaurentZ { coeffs };
    for (q, v) in values {
        if poly.eval(*q) != *v {
            return Err(RulingError::WindowTooSmall(lo, hi));
        }
    }
    Ok(poly)
}

/// `Aug_m(S(K, beta), q)` and the raw count.
pub fn satellite_aug(knot: &DgaPresentation, b: &BraidWord, mu: &[i64], m: u32, q: u64) -> Result<(u128, SqrtQ), RulingError> {
    let sat = build_satellite(knot, b, mu)?;
    let mut problem = RepProblem::augmentations(sat.dga.clone(), field(q)?, m);
    problem.families = sat.families();
    let count = count_reps(&problem)?;
    Ok((count, aug_from_count(&sat.dga, m, q, count)))
}

pub fn satellite_ruling_value(knot: &DgaPresentation, b: &BraidWord, mu: &[i64], m: u32, q: u64) -> Result<SqrtQ, RulingError> {
    Ok(satellite_aug(knot, b, mu, m, q)?.1)
}

#[derive(Debug, Clone, Serialize)]
pub struct DifferentialTerm {
    pub d: Vec<Vec<u16>>,
    pub count: String,
    pub reduced: SqrtQ,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremAReport {
    pub knot: String,
    pub braid: String,
    pub m: u32,
    pub q: u64,
    pub aug_count: String,
    pub rep_count: String,
    pub lambda: i64,
    pub lhs: SqrtQ,
    pub rhs: SqrtQ,
    pub terms: Vec<DifferentialTerm>,
    pub equal: bool,
}

/// Both sides of the satellite formula, computed independently.
pub fn theorem_a_check(knot: &DgaPresentation, b: &BraidWord, mu: &[i64], m: u32, q: u64) -> Result<TheoremAReport, RulingError> {
    let f = field(q)?;
    let (aug_count, lhs) = satellite_aug(knot, b, mu, m, q)?;
    let v = GradedVS::new(mu.to_vec());
    let target = TargetSpec::PathSubset { braid: b.clone(), mu: mu.to_vec() };
    let mut sum = SqrtQ::zero(q);
    let mut terms = Vec::new();
    let mut total = 0u128;
    for d in repcount::enumerate_differentials(&f, &v, m) {
        let problem = RepProblem::new(knot.clone(), f.clone(), v.clone(), d.clone(), m, vec![target.clone()]);
        let report = repcount::rep_report(&problem)?;
        total += report.count.parse::<u128>().unwrap();
        sum = sum.add(&report.reduced);
        terms.push(DifferentialTerm { d: d.to_rows(), count: report.count, reduced: report.reduced });
    }
    let lambda = lambda_m(b, mu, m);
    let n = b.strands() as i64;
    let rhs = SqrtQ::q_half_power(-lambda, q).mul(&z_of_q(q).pow(-n).expect("z != 0")).mul(&sum);
    Ok(TheoremAReport {
        knot: knot.name.clone(),
        braid: b.to_string(),
        m,
        q,
        aug_count: aug_count.to_string(),
        rep_count: total.to_string(),
        lambda,
        equal: lhs == rhs,
        lhs,
        rhs,
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Satellite,
    Representation,
    Both,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidTerm {
    pub braid: String,
    pub length: usize,
    pub aug: SqrtQ,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColoredRulingValue {
    pub n: usize,
    pub m: u32,
    pub q: u64,
    pub satellite: Option<SqrtQ>,
    pub representation: Option<SqrtQ>,
    pub breakdown: Vec<BraidTerm>,
}

impl ColoredRulingValue {
    pub fn value(&self) -> &SqrtQ {
        self.satellite.as_ref().or(self.representation.as_ref()).expect("at least one route")
    }

    pub fn routes_agree(&self) -> Option<bool> {
        Some(self.satellite.as_ref()? == self.representation.as_ref()?)
    }
}

pub fn colored_ruling(knot: &DgaPresentation, n: usize, m: u32, q: u64, route: Route) -> Result<ColoredRulingValue, RulingError> {
    if m == 1 {
        return Err(RulingError::MIsOne);
    }
    repcount::check_hypotheses(knot, &field(q)?, m)?;
    let mut out = ColoredRulingValue { n, m, q, satellite: None, representation: None, breakdown: Vec::new() };
    if route != Route::Representation {
        let mu = vec![0; n];
        let mut sum = SqrtQ::zero(q);
        for perm in braid::all_permutations(n) {
            let b = braid::reduced_word(&perm).expect("valid permutation");
            let aug = satellite_ruling_value(knot, &b, &mu, m, q)?;
            sum = sum.add(&SqrtQ::q_half_power(b.len() as i64, q).mul(&aug));
            out.breakdown.push(BraidTerm { braid: b.to_string(), length: b.len(), aug });
        }
        out.satellite = Some(sum.div(&alpha_n(n, q)).expect("alpha_n != 0"));
    }
    if route != Route::Satellite {
        out.representation = Some(repcount::total_rep_number(knot, n, m, q)?);
    }
    Ok(out)
}

/// `sum_beta reduced Rep(K, F_q^n, B_beta)` against the same with every unit allowed.
pub fn bruhat_consistency(knot: &DgaPresentation, n: usize, m: u32, q: u64) -> Result<(SqrtQ, SqrtQ), RulingError> {
    let f = field(q)?;
    let v = GradedVS::trivial(n);
    let zero = FqMatrix::zeros(n, n);
    let mut sum = SqrtQ::zero(q);
    for perm in braid::all_permutations(n) {
        let b = braid::reduced_word(&perm).expect("valid permutation");
        let target = TargetSpec::PathSubset { braid: b, mu: vec![0; n] };
        let p = RepProblem::new(knot.clone(), f.clone(), v.clone(), zero.clone(), m, vec![target]);
        sum = sum.add(&repcount::reduced_rep_number(&p)?);
    }
    let all = RepProblem::new(knot.clone(), f, v, zero, m, vec![TargetSpec::AllUnits]);
    Ok((sum, repcount::reduced_rep_number(&all)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotlib::builtin;

    fn q_frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn quantum_numbers() {
        assert_eq!(z_of_q(2), SqrtQ::new(rat(0), q_frac(1, 2), 2));
        assert_eq!(quantum_int(1, 5), SqrtQ::one(5));
        assert_eq!(quantum_int(2, 4), SqrtQ::rational(q_frac(5, 2), 4));
        for q in [2, 3, 4, 5, 7] {
            assert_eq!(alpha_n(2, q), SqrtQ::int(q as i64 + 1, q));
            assert_eq!(quantum_int(2, q), SqrtQ::q_half_power(1, q).add(&SqrtQ::q_half_power(-1, q)));
        }
    }

    #[test]
    fn interpolation_basics() {
        let unknot = builtin("unknot").unwrap().dga;
        let vals: Vec<(u64, SqrtQ)> = [2, 3].iter().map(|&q| (q, repcount::aug_number(&unknot, 0, q).unwrap())).collect();
        assert_eq!(interpolate_ruling(&vals, (-1, 0)).unwrap(), LaurentZ::from_coeffs(&[(-1, 1)]));
        let zeros: Vec<(u64, SqrtQ)> = [2, 3, 5].iter().map(|&q| (q, SqrtQ::zero(q))).collect();
        assert!(interpolate_ruling(&zeros, (0, 2)).unwrap().is_zero());
        let r = LaurentZ::from_coeffs(&[(-1, 3), (1, 9), (3, 6), (5, 1)]);
        assert_eq!(r.to_string(), "3z^-1 + 9z + 6z^3 + z^5");
        let few: Vec<(u64, SqrtQ)> = [2].iter().map(|&q| (q, r.eval(q))).collect();
        assert!(matches!(interpolate_ruling(&few, (-2, 6)), Err(RulingError::NeedMorePoints { .. })));
        let pts: Vec<(u64, SqrtQ)> = [2, 3, 4, 5, 7].iter().map(|&q| (q, r.eval(q))).collect();
        assert!(matches!(interpolate_ruling(&pts, (-1, 1)), Err(RulingError::WindowTooSmall(..))));
    }

    #[test]
    fn satellite_formula_small() {
        let k = builtin("trefoil").unwrap().dga;
        let r = theorem_a_check(&k, &BraidWord::parse(2, "s1").unwrap(), &[0, 0], 0, 2).unwrap();
        assert!(r.equal, "{r:?}");
        assert_eq!(r.aug_count, "146");
        let counts: Vec<&str> = r.terms.iter().map(|t| t.count.as_str()).collect();
        assert_eq!(counts, ["146"]);
        let r = theorem_a_check(&k, &BraidWord::identity(2), &[0, 0], 0, 2).unwrap();
        assert!(r.equal, "{r:?}");
    }

    #[test]
    fn colored_two_routes() {
        let k = builtin("trefoil").unwrap().dga;
        let v = colored_ruling(&k, 2, 0, 2, Route::Both).unwrap();
        assert_eq!(v.routes_agree(), Some(true));
        assert!(matches!(colored_ruling(&k, 2, 1, 2, Route::Both), Err(RulingError::MIsOne)));
        let (a, b) = bruhat_consistency(&k, 2, 0, 2).unwrap();
        assert_eq!(a, b);
    }
}
