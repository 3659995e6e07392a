//! Images of `xy` path matrices over `F_q` and the Bruhat decomposition of `GL(n, q)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::braid::{self, sign, BraidError, BraidWord};
use crate::gf::{Fe, Field};
use crate::matrix::{gl_order, masked_matrices, FqMatrix};
use crate::ncdga::{GenId, NcPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathsetError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("matrix is not invertible")]
    Singular,
}

/// Whether an element of degree `d` survives in the `Z/m` grading.
pub fn graded_zero(d: i64, m: u32) -> bool {
    if m == 0 {
        d == 0
    } else {
        d.rem_euclid(m as i64) == 0
    }
}

/// Values of the braid generators under a ring map to `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingMap {
    pub t: Vec<Fe>,
    pub p: Vec<Fe>,
    pub x: BTreeMap<(usize, usize), Fe>,
}

/// The image of `Delta P_xz (I + X Sigma)` under a ring map.
pub fn ring_map_matrix(f: &Field, b: &BraidWord, mu: &[i64], alpha: &RingMap) -> FqMatrix {
    let n = b.strands();
    let mut p = FqMatrix::identity(n);
    let strands = b.crossing_strands();
    for (j, &k) in b.letters().iter().enumerate() {
        let s = sign(mu[strands[j].1 - 1]);
        let mut v = FqMatrix::identity(n);
        v.set(k - 1, k - 1, f.mul(f.from_int(s), alpha.p[j]));
        v.set(k - 1, k, 1);
        v.set(k, k - 1, 1);
        v.set(k, k, 0);
        p = p.mul(f, &v);
    }
    let mut unip = FqMatrix::identity(n);
    for (&(i, j), &x) in &alpha.x {
        unip.set(i - 1, j - 1, f.mul(x, f.from_int(sign(mu[j - 1]))));
    }
    let mut delta = FqMatrix::zeros(n, n);
    for i in 0..n {
        let t = alpha.t[i];
        let d = if sign(mu[i]) > 0 { t } else { f.inv(t).expect("t is a unit") };
        delta.set(i, i, d);
    }
    delta.mul(f, &p).mul(f, &unip)
}

fn free_slots(b: &BraidWord, mu: &[i64], m: u32) -> (Vec<bool>, Vec<(usize, usize)>) {
    let p_free = b.crossing_degrees(mu).iter().map(|&d| graded_zero(d, m)).collect();
    let n = b.strands();
    let mut x_free = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if graded_zero(mu[i - 1] - mu[j - 1], m) {
                x_free.push((i, j));
            }
        }
    }
    (p_free, x_free)
}

/// `|B_beta| = (q-1)^n q^{#graded p} q^{#graded x}` for reduced words.
pub fn path_subset_size_formula(b: &BraidWord, mu: &[i64], m: u32, q: u64) -> u128 {
    let (p_free, x_free) = free_slots(b, mu, m);
    let q = q as u128;
    let pf = p_free.iter().filter(|&&x| x).count() as u32;
    (q - 1).pow(b.strands() as u32) * q.pow(pf) * q.pow(x_free.len() as u32)
}

/// Calls `visit` for every ring map compatible with the `Z/m` grading.
pub fn for_each_ring_map(f: &Field, b: &BraidWord, mu: &[i64], m: u32, mut visit: impl FnMut(&RingMap)) {
    let n = b.strands();
    let (p_free, x_free) = free_slots(b, mu, m);
    let q = f.q() as u64;
    let units = (q - 1).pow(n as u32);
    let pf: Vec<usize> = (0..p_free.len()).filter(|&j| p_free[j]).collect();
    let rest = q.pow((pf.len() + x_free.len()) as u32);
    let mut alpha = RingMap { t: vec![1; n], p: vec![0; b.len()], x: BTreeMap::new() };
    for &(i, j) in &x_free {
        alpha.x.insert((i, j), 0);
    }
    for tc in 0..units {
        let mut c = tc;
        for i in 0..n {
            alpha.t[i] = (c % (q - 1) + 1) as Fe;
            c /= q - 1;
        }
        for rc in 0..rest {
            let mut c = rc;
            for &j in &pf {
                alpha.p[j] = (c % q) as Fe;
                c /= q;
            }
            for key in &x_free {
                alpha.x.insert(*key, (c % q) as Fe);
                c /= q;
            }
            visit(&alpha);
        }
    }
}

/// All matrices `alpha(P_xy)`, sorted; errors if the map is not injective.
pub fn enumerate_path_subset(f: &Field, b: &BraidWord, mu: &[i64], m: u32) -> Result<Vec<FqMatrix>, PathsetError> {
    if mu.len() != b.strands() {
        return Err(BraidError::MaslovLength { expected: b.strands(), got: mu.len() }.into());
    }
    let mut out = Vec::new();
    for_each_ring_map(f, b, mu, m, |a| out.push(ring_map_matrix(f, b, mu, a)));
    let total = out.len();
    out.sort();
    out.dedup();
    if out.len() != total && braid::is_reduced(b) {
        panic!("path subset map failed to be injective for a reduced word");
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bruhat {
    /// 1-indexed, `perm[c] = r` when `S` has its 1 at `(r, c + 1)`.
    pub perm: Vec<usize>,
    pub d: FqMatrix,
    pub u: FqMatrix,
    pub s: FqMatrix,
}

/// `D A U = S` with `D` diagonal, `U` unipotent upper triangular and `S` in Kalman form.
pub fn bruhat_reduce(f: &Field, a: &FqMatrix) -> Result<Bruhat, PathsetError> {
    let n = a.rows;
    let mut s = a.clone();
    let mut d = FqMatrix::identity(n);
    let mut u = FqMatrix::identity(n);
    let mut perm = Vec::with_capacity(n);
    for c in 0..n {
        let r = (0..n).rev().find(|&r| s.get(r, c) != 0).ok_or(PathsetError::Singular)?;
        let inv = f.inv(s.get(r, c)).unwrap();
        for j in 0..n {
            let v = f.mul(s.get(r, j), inv);
            s.set(r, j, v);
        }
        d.set(r, r, inv);
        for j in c + 1..n {
            let coef = f.neg(s.get(r, j));
            if coef == 0 {
                continue;
            }
            for target in [&mut s, &mut u] {
                for i in 0..n {
                    let v = f.add(target.get(i, j), f.mul(coef, target.get(i, c)));
                    target.set(i, j, v);
                }
            }
        }
        perm.push(r + 1);
    }
    if perm.iter().collect::<HashSet<_>>().len() != n {
        return Err(PathsetError::Singular);
    }
    Ok(Bruhat { perm, d, u, s })
}

fn p_positions(b: &BraidWord, mu: &[i64]) -> Vec<((usize, usize), i64)> {
    let (_, labels) = braid::standalone_labels(b, mu);
    let pxz = braid::path_matrix_xz(b, mu, &labels).expect("checked Maslov length");
    let mut pos = vec![((0, 0), 0); b.len()];
    for r in 0..b.strands() {
        for c in 0..b.strands() {
            for (w, coef) in pxz.get(r, c).terms() {
                if let [l] = w.letters() {
                    if let Some(j) = labels.p.iter().position(|&g: &GenId| g == l.gen) {
                        pos[j] = ((r, c), coef);
                    }
                }
            }
        }
    }
    pos
}

/// The unique ring map sending `P_xy` to `a`, if `a` lies in the graded path subset.
pub fn recover_ring_map(f: &Field, a: &FqMatrix, b: &BraidWord, mu: &[i64], m: u32) -> Result<Option<RingMap>, PathsetError> {
    if !braid::is_reduced(b) {
        return Err(BraidError::NotReduced.into());
    }
    let br = match bruhat_reduce(f, a) {
        Ok(br) => br,
        Err(_) => return Ok(None),
    };
    if br.perm != braid::permutation_of(b) {
        return Ok(None);
    }
    let n = b.strands();
    let w = br.u.inverse(f).expect("unipotent");
    let mut alpha = RingMap { t: vec![0; n], p: vec![0; b.len()], x: BTreeMap::new() };
    for i in 0..n {
        let delta = f.inv(br.d.get(i, i)).ok_or(PathsetError::Singular)?;
        alpha.t[i] = if sign(mu[i]) > 0 { delta } else { f.inv(delta).unwrap() };
    }
    let (p_free, x_free) = free_slots(b, mu, m);
    for i in 1..=n {
        for j in i + 1..=n {
            let x = f.mul(w.get(i - 1, j - 1), f.from_int(sign(mu[j - 1])));
            if x_free.contains(&(i, j)) {
                alpha.x.insert((i, j), x);
            } else if x != 0 {
                return Ok(None);
            }
        }
    }
    for (j, ((r, c), coef)) in p_positions(b, mu).into_iter().enumerate() {
        let v = f.mul(br.s.get(r, c), f.from_int(coef));
        if !p_free[j] && v != 0 {
            return Ok(None);
        }
        alpha.p[j] = v;
    }
    Ok((ring_map_matrix(f, b, mu, &alpha) == *a).then_some(alpha))
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub n: usize,
    pub q: u32,
    pub gl_order: u128,
    pub cells: Vec<(String, usize)>,
    pub disjoint: bool,
    pub covers: bool,
    pub bruhat_agrees: bool,
}

impl PartitionReport {
    pub fn ok(&self) -> bool {
        self.disjoint && self.covers && self.bruhat_agrees
    }
}

/// Checks that the path subsets of all reduced permutation braids partition `GL(n, q)`.
pub fn verify_bruhat_partition(f: &Field, n: usize) -> PartitionReport {
    let mu = vec![0; n];
    let mut owner: HashMap<FqMatrix, Vec<usize>> = HashMap::new();
    let mut cells = Vec::new();
    let mut disjoint = true;
    for perm in braid::all_permutations(n) {
        let b = braid::reduced_word(&perm).unwrap();
        let cell = enumerate_path_subset(f, &b, &mu, 0).unwrap();
        cells.push((braid::cycle_string(&perm), cell.len()));
        for a in cell {
            if owner.insert(a, perm.clone()).is_some() {
                disjoint = false;
            }
        }
    }
    let mut covers = true;
    let mut bruhat_agrees = true;
    let mask = vec![true; n * n];
    let mut count = 0u128;
    for a in masked_matrices(f, n, &mask).filter(|a| a.is_invertible(f)) {
        count += 1;
        match owner.get(&a) {
            None => covers = false,
            Some(perm) => {
                if bruhat_reduce(f, &a).map(|br| br.perm) != Ok(perm.clone()) {
                    bruhat_agrees = false;
                }
            }
        }
    }
    let gl = gl_order(n as u32, f.q() as u64);
    covers &= count == gl && owner.len() as u128 == gl;
    PartitionReport { n, q: f.q(), gl_order: gl, cells, disjoint, covers, bruhat_agrees }
}

/// Scalar evaluation of a polynomial under an assignment of its generators.
pub fn eval_scalar(f: &Field, p: &NcPoly, value: &impl Fn(GenId) -> Fe) -> Option<Fe> {
    let mut acc = 0;
    for (w, c) in p.terms() {
        let mut term = f.from_int(c);
        for l in w.letters() {
            let v = value(l.gen);
            let v = if l.inv { f.inv(v)? } else { v };
            term = f.mul(term, v);
        }
        acc = f.add(acc, term);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_over_f2() {
        let f = Field::new(2).unwrap();
        let b = BraidWord::parse(2, "s1").unwrap();
        let cell = enumerate_path_subset(&f, &b, &[0, 0], 0).unwrap();
        let mut expected: Vec<FqMatrix> = [[0, 1, 1, 0], [1, 1, 1, 0], [1, 0, 1, 1], [0, 1, 1, 1]]
            .iter()
            .map(|d| FqMatrix::square(2, d.to_vec()))
            .collect();
        expected.sort();
        assert_eq!(cell, expected);
    }

    #[test]
    fn numeric_matches_symbolic() {
        let f = Field::new(5).unwrap();
        let b = BraidWord::parse(3, "s2 s1 s2").unwrap();
        let mu = [0, 1, 1];
        let (_, labels) = braid::standalone_labels(&b, &mu);
        let sym = braid::path_matrix_xy(&b, &mu, &labels).unwrap();
        let alpha = RingMap { t: vec![2, 3, 4], p: vec![1, 4, 2], x: [((1, 2), 3), ((1, 3), 1), ((2, 3), 2)].into() };
        let val = |g: GenId| -> Fe {
            if let Some(i) = labels.t.iter().position(|&h| h == g) {
                return alpha.t[i];
            }
            if let Some(j) = labels.p.iter().position(|&h| h == g) {
                return alpha.p[j];
            }
            let key = labels.x.iter().find(|(_, &h)| h == g).map(|(k, _)| *k).unwrap();
            alpha.x[&key]
        };
        let num = ring_map_matrix(&f, &b, &mu, &alpha);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(eval_scalar(&f, sym.get(r, c), &val), Some(num.get(r, c)));
            }
        }
    }

    #[test]
    fn bruhat_of_antidiagonal() {
        let f = Field::new(2).unwrap();
        let a = FqMatrix::square(2, vec![0, 1, 1, 0]);
        let br = bruhat_reduce(&f, &a).unwrap();
        assert_eq!(braid::cycle_string(&br.perm), "(1 2)");
        assert_eq!(br.d.mul(&f, &a).mul(&f, &br.u), br.s);
    }

    #[test]
    fn recover_roundtrip() {
        let f = Field::new(3).unwrap();
        let b = BraidWord::parse(3, "s1 s2").unwrap();
        let mu = [0, 0, 0];
        for_each_ring_map(&f, &b, &mu, 0, |alpha| {
            let a = ring_map_matrix(&f, &b, &mu, alpha);
            assert_eq!(recover_ring_map(&f, &a, &b, &mu, 0).unwrap().as_ref(), Some(alpha));
        });
    }
}
