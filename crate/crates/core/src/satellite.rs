//! Satellites `S(K, beta)` of a knot DGA by a positive permutation braid, and
//! the correspondence between their augmentations and representations of `K`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::braid::{self, add_braid_generators, solve_braid_differential, BraidError, BraidLabels, BraidWord};
use crate::gf::{Fe, Field};
use crate::matrix::FqMatrix;
use crate::ncdga::{Component, DgaPresentation, GenId, Letter, NcMatrix, NcPoly};
use crate::pathsets::{eval_scalar, graded_zero, recover_ring_map, ring_map_matrix, PathsetError, RingMap};
use crate::repcount::{limit_exponent, sigma_m, GradedVS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatelliteError {
    #[error("the knot must have exactly one component with one basepoint")]
    Basepoints,
    #[error("Maslov potential must be constant on each component of the satellite")]
    Maslov,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Pathset(#[from] PathsetError),
    #[error("satellite fails the DGA check: {0}")]
    Check(String),
    #[error("not an augmentation: {0}")]
    NotAugmentation(String),
}

#[derive(Debug, Clone)]
pub struct Satellite {
    pub dga: DgaPresentation,
    pub knot: DgaPresentation,
    pub braid: BraidWord,
    pub mu: Vec<i64>,
    pub labels: BraidLabels,
    /// For each knot generator, the `n x n` lattice of its copies (chords only).
    pub lattice: HashMap<GenId, Vec<GenId>>,
    pub knot_t: GenId,
}

fn sigma_matrix(mu: &[i64]) -> NcMatrix {
    NcMatrix::signs(&mu.iter().map(|&m| braid::sign(m)).collect::<Vec<_>>())
}

pub fn build_satellite(knot: &DgaPresentation, b: &BraidWord, mu: &[i64]) -> Result<Satellite, SatelliteError> {
    let n = b.strands();
    if mu.len() != n {
        return Err(BraidError::MaslovLength { expected: n, got: mu.len() }.into());
    }
    let ts = knot.invertibles();
    if knot.components.len() != 1 || ts.len() != 1 {
        return Err(SatelliteError::Basepoints);
    }
    let knot_t = ts[0];
    let perm = braid::permutation_of(b);
    let cycles = braid::cycles(&perm);
    if cycles.iter().any(|c| c.iter().any(|&i| mu[i - 1] != mu[c[0] - 1])) {
        return Err(SatelliteError::Maslov);
    }
    let mut dga = DgaPresentation::new(format!("S({}, {b})", knot.name), knot.rotation);
    let mut lattice = HashMap::new();
    for g in knot.chords() {
        let gen = knot.gen(g);
        let mut ids = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let name = if n == 1 { gen.name.clone() } else { format!("{}_{i}{j}", gen.name) };
                ids.push(dga.add_generator(name, gen.degree + mu[i - 1] - mu[j - 1], false));
            }
        }
        lattice.insert(g, ids);
    }
    let labels = add_braid_generators(&mut dga, b, mu, knot.gen(knot_t).degree);
    for c in &cycles {
        let basepoints: Vec<GenId> = c.iter().map(|&i| labels.t[i - 1]).collect();
        dga.components.push(Component { initial: basepoints[0], basepoints });
    }
    let mut sat = Satellite { dga, knot: knot.clone(), braid: b.clone(), mu: mu.to_vec(), labels, lattice, knot_t };
    solve_braid_differential(&mut sat.dga, b, mu, &sat.labels)?;
    let sig = sigma_matrix(mu);
    let y = sat.y_matrix();
    let sys = sig.mul(&y).mul(&sig);
    for g in knot.chords() {
        let a = sat.lattice_matrix(g);
        let image = sat.phi(&knot.differential[g as usize])?;
        let mut d = sig.mul(&image).mul(&sig).sub(&sys.mul(&a));
        let tail = sig.mul(&a).mul(&sig).mul(&y);
        d = if knot.gen(g).degree.rem_euclid(2) == 0 { d.add(&tail) } else { d.sub(&tail) };
        for (e, &id) in sat.lattice[&g].iter().enumerate() {
            sat.dga.set_differential(id, d.entries[e].clone());
        }
    }
    sat.dga.validate().map_err(|e| SatelliteError::Check(e.to_string()))?;
    let check = sat.dga.check();
    if !check.ok() {
        return Err(SatelliteError::Check(check.failures.join("; ")));
    }
    Ok(sat)
}

impl Satellite {
    pub fn n(&self) -> usize {
        self.braid.strands()
    }

    fn lattice_matrix(&self, g: GenId) -> NcMatrix {
        let n = self.n();
        NcMatrix { n, entries: self.lattice[&g].iter().map(|&id| NcPoly::gen(id)).collect() }
    }

    pub fn y_matrix(&self) -> NcMatrix {
        let mut m = NcMatrix::zero(self.n());
        for (&(i, j), &g) in &self.labels.y {
            m.set(i - 1, j - 1, NcPoly::gen(g));
        }
        m
    }

    pub fn sigma(&self) -> NcMatrix {
        sigma_matrix(&self.mu)
    }

    /// `Phi(a_k) = A_k Sigma`, `Phi(t) = P_xy`, `Phi(t^-1) = Q_xy`.
    pub fn phi(&self, p: &NcPoly) -> Result<NcMatrix, SatelliteError> {
        let n = self.n();
        let pxy = braid::path_matrix_xy(&self.braid, &self.mu, &self.labels)?;
        let qxy = braid::path_matrix_xy_inverse(&self.braid, &self.mu, &self.labels)?;
        let sig = self.sigma();
        let letter = |l: Letter| -> NcMatrix {
            if l.gen == self.knot_t {
                if l.inv {
                    qxy.clone()
                } else {
                    pxy.clone()
                }
            } else {
                self.lattice_matrix(l.gen).mul(&sig)
            }
        };
        let mut out = NcMatrix::zero(n);
        for (w, c) in p.terms() {
            let mut acc = NcMatrix::identity(n);
            for &l in w.letters() {
                acc = acc.mul(&letter(l));
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// Lattice copies grouped per knot chord, for the search planner.
    pub fn families(&self) -> Vec<Vec<GenId>> {
        self.knot.chords().iter().map(|g| self.lattice[g].clone()).collect()
    }

    pub fn space(&self) -> GradedVS {
        GradedVS::new(self.mu.clone())
    }
}

/// An augmentation as one value per generator of the satellite algebra.
pub type Augmentation = Vec<Fe>;

pub fn check_augmentation(f: &Field, dga: &DgaPresentation, eps: &[Fe], m: u32) -> Result<(), SatelliteError> {
    for (g, gen) in dga.generators.iter().enumerate() {
        if gen.invertible && eps[g] == 0 {
            return Err(SatelliteError::NotAugmentation(format!("{} maps to 0", gen.name)));
        }
        if eps[g] != 0 && !graded_zero(gen.degree, m) {
            return Err(SatelliteError::NotAugmentation(format!("{} has degree {}", gen.name, gen.degree)));
        }
        let v = eval_scalar(f, &dga.differential[g], &|h| eps[h as usize]);
        if v != Some(0) {
            return Err(SatelliteError::NotAugmentation(format!("d({}) does not vanish", gen.name)));
        }
    }
    Ok(())
}

/// `d = eps(Y Sigma)` and `f = eps . Phi`, with `f` listed per knot generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepPair {
    pub d: FqMatrix,
    pub f: Vec<FqMatrix>,
}

pub fn aug_to_rep(f: &Field, sat: &Satellite, eps: &[Fe], m: u32) -> Result<RepPair, SatelliteError> {
    check_augmentation(f, &sat.dga, eps, m)?;
    let n = sat.n();
    let signs: Vec<Fe> = sat.mu.iter().map(|&x| f.from_int(braid::sign(x))).collect();
    let mut d = FqMatrix::zeros(n, n);
    for (&(i, j), &g) in &sat.labels.y {
        d.set(i - 1, j - 1, f.mul(eps[g as usize], signs[j - 1]));
    }
    let mut alpha = RingMap { t: Vec::new(), p: Vec::new(), x: BTreeMap::new() };
    alpha.t = sat.labels.t.iter().map(|&g| eps[g as usize]).collect();
    alpha.p = sat.labels.p.iter().map(|&g| eps[g as usize]).collect();
    for (&k, &g) in &sat.labels.x {
        alpha.x.insert(k, eps[g as usize]);
    }
    let t_image = ring_map_matrix(f, &sat.braid, &sat.mu, &alpha);
    let reps = (0..sat.knot.len() as GenId)
        .map(|g| {
            if g == sat.knot_t {
                return t_image.clone();
            }
            let mut a = FqMatrix::zeros(n, n);
            for (e, &id) in sat.lattice[&g].iter().enumerate() {
                a.data[e] = f.mul(eps[id as usize], signs[e % n]);
            }
            a
        })
        .collect();
    Ok(RepPair { d, f: reps })
}

/// Inverse of [`aug_to_rep`]; `None` when `f(t)` is outside the path subset.
pub fn rep_to_aug(f: &Field, sat: &Satellite, pair: &RepPair, m: u32) -> Result<Option<Augmentation>, SatelliteError> {
    let n = sat.n();
    let signs: Vec<Fe> = sat.mu.iter().map(|&x| f.from_int(braid::sign(x))).collect();
    let Some(alpha) = recover_ring_map(f, &pair.f[sat.knot_t as usize], &sat.braid, &sat.mu, m)? else {
        return Ok(None);
    };
    let mut eps = vec![0; sat.dga.len()];
    for (i, &g) in sat.labels.t.iter().enumerate() {
        eps[g as usize] = alpha.t[i];
    }
    for (j, &g) in sat.labels.p.iter().enumerate() {
        eps[g as usize] = alpha.p[j];
    }
    for (k, &g) in &sat.labels.x {
        eps[g as usize] = alpha.x.get(k).copied().unwrap_or(0);
    }
    for (&(i, j), &g) in &sat.labels.y {
        eps[g as usize] = f.mul(pair.d.get(i - 1, j - 1), signs[j - 1]);
    }
    for (&g, ids) in &sat.lattice {
        for (e, &id) in ids.iter().enumerate() {
            eps[id as usize] = f.mul(pair.f[g as usize].data[e], signs[e % n]);
        }
    }
    Ok(Some(eps))
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaDecomposition {
    pub x_a: i64,
    pub x_xy: i64,
    pub x_p: i64,
    pub total: i64,
    /// `X_a` from the limit product over `-End(V_beta)`.
    pub x_a_expected: i64,
    /// `sum_k 2 binom(n(k), 2)` over the `Z/m` graded dimension.
    pub x_xy_expected: i64,
    pub lambda: i64,
}

impl SigmaDecomposition {
    pub fn ok(&self) -> bool {
        self.x_a + self.x_xy + self.x_p == self.total
            && self.x_a == self.x_a_expected
            && self.x_xy == self.x_xy_expected
            && self.x_p == self.lambda
    }
}

/// `lambda_m(beta)`: `sigma_m` of the degree distribution of the crossings.
pub fn lambda_m(b: &BraidWord, mu: &[i64], m: u32) -> i64 {
    let mut dist = BTreeMap::new();
    for d in b.crossing_degrees(mu) {
        *dist.entry(d).or_insert(0) += 1;
    }
    sigma_m(&dist, m)
}

pub fn sigma_decomposition(sat: &Satellite, m: u32) -> SigmaDecomposition {
    let mut parts = [BTreeMap::new(), BTreeMap::new(), BTreeMap::new()];
    let is_p: Vec<GenId> = sat.labels.p.clone();
    let is_xy: Vec<GenId> = sat.labels.x.values().chain(sat.labels.y.values()).copied().collect();
    for (g, gen) in sat.dga.generators.iter().enumerate() {
        if gen.invertible {
            continue;
        }
        let g = g as GenId;
        let bucket = if is_p.contains(&g) {
            2
        } else if is_xy.contains(&g) {
            1
        } else {
            0
        };
        *parts[bucket].entry(gen.degree).or_insert(0) += 1;
    }
    let [a, xy, p] = parts.map(|d| sigma_m(&d, m));
    let mut classes: BTreeMap<i64, i64> = BTreeMap::new();
    for &x in &sat.mu {
        *classes.entry(if m == 0 { x } else { x.rem_euclid(m as i64) }).or_insert(0) += 1;
    }
    SigmaDecomposition {
        x_a: a,
        x_xy: xy,
        x_p: p,
        total: sigma_m(&sat.dga.degree_distribution(), m),
        x_a_expected: limit_exponent(&sat.knot.degree_distribution(), &sat.space(), m),
        x_xy_expected: classes.values().map(|&c| c * (c - 1)).sum(),
        lambda: lambda_m(&sat.braid, &sat.mu, m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotlib::builtin;
    use crate::repcount::{aug_from_count, count_reps, RepProblem};
    use crate::sqrtq::SqrtQ;
    use num_rational::BigRational;

    fn trefoil_a2() -> Satellite {
        let k = builtin("trefoil").unwrap().dga;
        build_satellite(&k, &BraidWord::parse(2, "s1").unwrap(), &[0, 0]).unwrap()
    }

    #[test]
    fn trefoil_a2_shape() {
        let s = trefoil_a2();
        assert_eq!(s.dga.degree_distribution(), BTreeMap::from([(-1, 1), (0, 14), (1, 8)]));
        assert_eq!(s.dga.chords().len(), 23);
        let p = s.labels.p[0];
        assert_eq!(s.dga.format_poly(&s.dga.differential[p as usize]), "-t1^-1*y12*t2");
        let dec = sigma_decomposition(&s, 0);
        assert!(dec.ok(), "{dec:?}");
        assert_eq!((dec.x_a, dec.x_xy, dec.x_p, dec.total), (4, 2, 1, 7));
    }

    #[test]
    fn trefoil_a2_a4_differential() {
        let s = trefoil_a2();
        let a4 = s.knot.find("a4").unwrap();
        let expected = s
            .phi(&s.knot.differential[a4 as usize])
            .unwrap()
            .sub(&s.y_matrix().mul(&s.lattice_matrix(a4)))
            .sub(&s.lattice_matrix(a4).mul(&s.y_matrix()));
        for (e, &id) in s.lattice[&a4].iter().enumerate() {
            assert_eq!(s.dga.differential[id as usize], expected.entries[e]);
        }
    }

    #[test]
    fn phi_is_multiplicative_on_units() {
        let s = trefoil_a2();
        let t = s.knot_t;
        let w = NcPoly::word(crate::ncdga::Word(vec![Letter::new(t), Letter::inverse(t)]), 1);
        let prod = s.phi(&NcPoly::gen(t)).unwrap().mul(&s.phi(&NcPoly::inv_gen(t)).unwrap());
        assert_eq!(prod, NcMatrix::identity(2));
        assert_eq!(s.phi(&w).unwrap(), NcMatrix::identity(2));
    }

    #[test]
    fn trivial_satellites() {
        let u = builtin("unknot").unwrap().dga;
        let s = build_satellite(&u, &BraidWord::identity(1), &[0]).unwrap();
        assert_eq!(s.dga.degree_distribution(), u.degree_distribution());
        let k = builtin("trefoil").unwrap().dga;
        let s = build_satellite(&k, &BraidWord::identity(2), &[0, 0]).unwrap();
        assert_eq!(s.dga.components.len(), 2);
        assert_eq!(sigma_decomposition(&s, 0).x_p, 0);
        assert!(build_satellite(&k, &BraidWord::parse(2, "s1").unwrap(), &[0, 1]).is_err());
        let m52 = builtin("m52").unwrap().dga;
        let s = build_satellite(&m52, &BraidWord::parse(2, "s1").unwrap(), &[0, 0]).unwrap();
        assert!(sigma_decomposition(&s, 2).ok());
    }

    #[test]
    fn trefoil_a2_count_q2() {
        let s = trefoil_a2();
        let f = Field::new(2).unwrap();
        let mut p = RepProblem::augmentations(s.dga.clone(), f, 0);
        p.families = s.families();
        let c = count_reps(&p).unwrap();
        assert_eq!(c, 146);
        let v = aug_from_count(&s.dga, 0, 2, c);
        assert_eq!(v, SqrtQ::new(BigRational::from_integer(0.into()), BigRational::new(73.into(), 8.into()), 2));
    }
}
