//! Positive braids, their permutations, and `xz`/`xy` path matrices.
//!
//! Braid words are 1-indexed (`s1` swaps positions 1 and 2) and read left to
//! right. Strands are labelled by their position at the left end, and
//! `mu[i]` is the Maslov potential of the strand starting at position `i + 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ncdga::{DgaPresentation, GenId, NcMatrix, NcPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("generator s{k} is out of range for {n} strands")]
    OutOfRange { k: usize, n: usize },
    #[error("cannot parse braid word {0:?}")]
    Parse(String),
    #[error("expected {expected} Maslov values, got {got}")]
    MaslovLength { expected: usize, got: usize },
    #[error("braid word must be reduced")]
    NotReduced,
    #[error("{0:?} is not a permutation")]
    NotPermutation(Vec<usize>),
    #[error("braid differential is inconsistent at entry ({0}, {1})")]
    Inconsistent(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, BraidError> {
        if let Some(&k) = letters.iter().find(|&&k| k == 0 || k >= n) {
            return Err(BraidError::OutOfRange { k, n });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// Parses `"s1 s2 s1"`, `"s1s2s1"` or `""`.
    pub fn parse(n: usize, text: &str) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != ',' && *c != '*').collect();
        if cleaned.is_empty() || cleaned == "id" || cleaned == "1" {
            return Ok(BraidWord::identity(n));
        }
        for part in cleaned.split(['s', 'σ']).skip(1) {
            let k = part.parse().map_err(|_| BraidError::Parse(text.to_string()))?;
            letters.push(k);
        }
        if !cleaned.starts_with(['s', 'σ']) {
            return Err(BraidError::Parse(text.to_string()));
        }
        BraidWord::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Left-position labels of the strands occupying each position before each
    /// crossing; entry `len()` is the arrangement at the right end.
    pub fn arrangements(&self) -> Vec<Vec<usize>> {
        let mut cur: Vec<usize> = (1..=self.n).collect();
        let mut out = vec![cur.clone()];
        for &k in &self.letters {
            cur.swap(k - 1, k);
            out.push(cur.clone());
        }
        out
    }

    /// Left-position labels of the strands `(upper, lower)` meeting at each crossing.
    pub fn crossing_strands(&self) -> Vec<(usize, usize)> {
        let arr = self.arrangements();
        self.letters.iter().enumerate().map(|(j, &k)| (arr[j][k - 1], arr[j][k])).collect()
    }

    pub fn crossing_degrees(&self, mu: &[i64]) -> Vec<i64> {
        self.crossing_strands().iter().map(|&(a, b)| mu[a - 1] - mu[b - 1]).collect()
    }

    fn crossing_signs(&self, mu: &[i64]) -> Vec<i64> {
        self.crossing_strands().iter().map(|&(_, b)| sign(mu[b - 1])).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id{}", self.n);
        }
        let parts: Vec<String> = self.letters.iter().map(|k| format!("s{k}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn sign(mu: i64) -> i64 {
    if mu.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `perm[i - 1] = j` when the strand at right position `i` started at left position `j`.
pub fn permutation_of(b: &BraidWord) -> Vec<usize> {
    b.arrangements().pop().unwrap()
}

/// Cycle notation of a 1-indexed permutation, fixed points omitted.
pub fn cycle_string(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 1..=perm.len() {
        if seen[start - 1] || perm[start - 1] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i - 1] {
            seen[i - 1] = true;
            cyc.push(i.to_string());
            i = perm[i - 1];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 1..=perm.len() {
        if seen[start - 1] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i - 1] {
            seen[i - 1] = true;
            cyc.push(i);
            i = perm[i - 1];
        }
        out.push(cyc);
    }
    out
}

pub fn validate_permutation(perm: &[usize]) -> Result<(), BraidError> {
    let mut seen = vec![false; perm.len()];
    for &v in perm {
        if v == 0 || v > perm.len() || seen[v - 1] {
            return Err(BraidError::NotPermutation(perm.to_vec()));
        }
        seen[v - 1] = true;
    }
    Ok(())
}

/// Each pair of strands crosses at most once and no factor `s_i s_{i+1} s_i` occurs.
pub fn is_reduced(b: &BraidWord) -> bool {
    let mut crossed = std::collections::HashSet::new();
    for (a, c) in b.crossing_strands() {
        if !crossed.insert((a.min(c), a.max(c))) {
            return false;
        }
    }
    !b.letters.windows(3).any(|w| w[0] == w[2] && w[1] == w[0] + 1)
}

/// Canonical reduced word of a permutation: each target entry is pulled left in turn.
pub fn reduced_word(perm: &[usize]) -> Result<BraidWord, BraidError> {
    validate_permutation(perm)?;
    let n = perm.len();
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut letters = Vec::new();
    for i in 0..n {
        let j = cur.iter().position(|&v| v == perm[i]).unwrap();
        for k in (i..j).rev() {
            cur.swap(k, k + 1);
            letters.push(k + 1);
        }
    }
    BraidWord::new(n.max(1), letters)
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Generator ids of the braid part of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidLabels {
    pub n: usize,
    pub p: Vec<GenId>,
    pub x: BTreeMap<(usize, usize), GenId>,
    pub y: BTreeMap<(usize, usize), GenId>,
    pub t: Vec<GenId>,
}

fn pair_name(prefix: &str, i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i}_{j}")
    }
}

/// Appends `p_j`, `x_ij`, `y_ij`, `t_i` (in that order) with their gradings.
pub fn add_braid_generators(dga: &mut DgaPresentation, b: &BraidWord, mu: &[i64], t_degree: i64) -> BraidLabels {
    let n = b.strands();
    let p = b
        .crossing_degrees(mu)
        .iter()
        .enumerate()
        .map(|(j, &d)| dga.add_generator(format!("p{}", j + 1), d, false))
        .collect();
    let mut x = BTreeMap::new();
    let mut y = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            x.insert((i, j), dga.add_generator(pair_name("x", i, j, n), mu[i - 1] - mu[j - 1], false));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            y.insert((i, j), dga.add_generator(pair_name("y", i, j, n), mu[i - 1] - mu[j - 1] - 1, false));
        }
    }
    let t = (1..=n).map(|i| dga.add_generator(format!("t{i}"), t_degree, true)).collect();
    BraidLabels { n, p, x, y, t }
}

fn check_mu(b: &BraidWord, mu: &[i64]) -> Result<(), BraidError> {
    if mu.len() != b.strands() {
        return Err(BraidError::MaslovLength { expected: b.strands(), got: mu.len() });
    }
    Ok(())
}

fn crossing_block(n: usize, k: usize, entry: NcPoly, inverse: bool) -> NcMatrix {
    let mut v = NcMatrix::identity(n);
    let (a, c) = (k - 1, k);
    v.set(a, c, NcPoly::one());
    v.set(c, a, NcPoly::one());
    if inverse {
        v.set(a, a, NcPoly::zero());
        v.set(c, c, entry.scale(-1));
    } else {
        v.set(a, a, entry);
        v.set(c, c, NcPoly::zero());
    }
    v
}

/// Product of the elementary crossing blocks.
pub fn path_matrix_xz(b: &BraidWord, mu: &[i64], labels: &BraidLabels) -> Result<NcMatrix, BraidError> {
    check_mu(b, mu)?;
    let signs = b.crossing_signs(mu);
    let mut m = NcMatrix::identity(b.strands());
    for (j, &k) in b.letters().iter().enumerate() {
        m = m.mul(&crossing_block(b.strands(), k, NcPoly::gen(labels.p[j]).scale(signs[j]), false));
    }
    Ok(m)
}

pub fn path_matrix_xz_inverse(b: &BraidWord, mu: &[i64], labels: &BraidLabels) -> Result<NcMatrix, BraidError> {
    check_mu(b, mu)?;
    let signs = b.crossing_signs(mu);
    let mut m = NcMatrix::identity(b.strands());
    for (j, &k) in b.letters().iter().enumerate().rev() {
        m = m.mul(&crossing_block(b.strands(), k, NcPoly::gen(labels.p[j]).scale(signs[j]), true));
    }
    Ok(m)
}

fn sigma(mu: &[i64]) -> NcMatrix {
    NcMatrix::signs(&mu.iter().map(|&m| sign(m)).collect::<Vec<_>>())
}

fn delta(mu: &[i64], labels: &BraidLabels, invert: bool) -> NcMatrix {
    let n = mu.len();
    let mut d = NcMatrix::zero(n);
    for i in 0..n {
        let flip = (sign(mu[i]) < 0) != invert;
        let e = if flip { NcPoly::inv_gen(labels.t[i]) } else { NcPoly::gen(labels.t[i]) };
        d.set(i, i, e);
    }
    d
}

fn strict_upper(labels: &BraidLabels, which: &BTreeMap<(usize, usize), GenId>) -> NcMatrix {
    let mut m = NcMatrix::zero(labels.n);
    for (&(i, j), &g) in which {
        m.set(i - 1, j - 1, NcPoly::gen(g));
    }
    m
}

/// `Delta * P_xz * (I + X Sigma)`.
pub fn path_matrix_xy(b: &BraidWord, mu: &[i64], labels: &BraidLabels) -> Result<NcMatrix, BraidError> {
    let pxz = path_matrix_xz(b, mu, labels)?;
    let unip = NcMatrix::identity(b.strands()).add(&strict_upper(labels, &labels.x).mul(&sigma(mu)));
    Ok(delta(mu, labels, false).mul(&pxz).mul(&unip))
}

/// `(I + X Sigma)^{-1} * P_xz^{-1} * Delta^{-1}`.
pub fn path_matrix_xy_inverse(b: &BraidWord, mu: &[i64], labels: &BraidLabels) -> Result<NcMatrix, BraidError> {
    let n = b.strands();
    let nil = strict_upper(labels, &labels.x).mul(&sigma(mu)).scale(-1);
    let mut unip_inv = NcMatrix::identity(n);
    let mut power = NcMatrix::identity(n);
    for _ in 1..n {
        power = power.mul(&nil);
        unip_inv = unip_inv.add(&power);
    }
    Ok(unip_inv.mul(&path_matrix_xz_inverse(b, mu, labels)?).mul(&delta(mu, labels, true)))
}

/// A 1 at `(perm(i), i)`; single labels `+-p` exactly above and left of the 1s.
pub fn kalman_form_check(pxz: &NcMatrix, perm: &[usize], labels: &BraidLabels) -> bool {
    let n = pxz.n;
    let col_of_one: Vec<usize> = {
        let mut c = vec![0; n];
        for (i, &r) in perm.iter().enumerate() {
            c[r - 1] = i;
        }
        c
    };
    let mut seen = vec![0usize; labels.p.len()];
    for r in 0..n {
        for c in 0..n {
            let e = pxz.get(r, c);
            if perm[c] == r + 1 {
                if *e != NcPoly::one() {
                    return false;
                }
                continue;
            }
            let above = r + 1 < perm[c];
            let left = c < col_of_one[r];
            if !(above && left) {
                if !e.is_zero() {
                    return false;
                }
                continue;
            }
            let terms: Vec<_> = e.terms().collect();
            if terms.len() != 1 || terms[0].1.abs() != 1 || terms[0].0.letters().len() != 1 {
                return false;
            }
            let l = terms[0].0.letters()[0];
            match labels.p.iter().position(|&g| g == l.gen) {
                Some(j) if !l.inv => seen[j] += 1,
                _ => return false,
            }
        }
    }
    seen.iter().all(|&s| s == 1)
}

/// Sets the differentials of the braid generators inside `dga`.
///
/// `dY = -Sigma Y Sigma Y`, and `dp`, `dx` are read off from
/// `Sigma dP = P (Y Sigma) - (Y Sigma) P` for the `xy` path matrix `P`,
/// column by column.
pub fn solve_braid_differential(
    dga: &mut DgaPresentation,
    b: &BraidWord,
    mu: &[i64],
    labels: &BraidLabels,
) -> Result<(), BraidError> {
    let n = b.strands();
    let perm = permutation_of(b);
    let pxz = path_matrix_xz(b, mu, labels)?;
    if !is_reduced(b) || !kalman_form_check(&pxz, &perm, labels) {
        return Err(BraidError::NotReduced);
    }
    let sig = sigma(mu);
    let y = strict_upper(labels, &labels.y);
    let dy = sig.mul(&y).mul(&sig).mul(&y).scale(-1);
    for (&(i, j), &g) in &labels.y {
        dga.set_differential(g, dy.get(i - 1, j - 1).clone());
    }
    let pxy = path_matrix_xy(b, mu, labels)?;
    let ys = y.mul(&sig);
    let target = delta(mu, labels, true).mul(&sig).mul(&pxy.mul(&ys).sub(&ys.mul(&pxy)));
    let unip = NcMatrix::identity(n).add(&strict_upper(labels, &labels.x).mul(&sig));
    let m = pxz.mul(&unip);
    let row_of_one: Vec<usize> = perm.iter().map(|&r| r - 1).collect();
    for k in 0..n {
        let sk = sign(mu[k]);
        for (j, &row) in row_of_one.iter().enumerate().take(k) {
            let known = dga.apply_diff(m.get(row, k));
            let dx = target.get(row, k).sub(&known).scale(sk);
            dga.set_differential(labels.x[&(j + 1, k + 1)], dx);
        }
        for &row in &row_of_one[k..] {
            let entry = pxz.get(row, k);
            let known = dga.apply_diff(m.get(row, k));
            let rest = target.get(row, k).sub(&known);
            if entry.is_zero() || *entry == NcPoly::one() {
                if !rest.is_zero() {
                    return Err(BraidError::Inconsistent(row + 1, k + 1));
                }
                continue;
            }
            let (w, s) = entry.terms().next().unwrap();
            dga.set_differential(w.letters()[0].gen, rest.scale(s));
        }
    }
    for r in 0..n {
        for c in 0..n {
            let lhs = dga.apply_diff(m.get(r, c));
            if lhs != *target.get(r, c) {
                return Err(BraidError::Inconsistent(r + 1, c + 1));
            }
        }
    }
    Ok(())
}

/// The braid algebra of `b` on its own, with its solved differential.
pub fn braid_dga(b: &BraidWord, mu: &[i64]) -> Result<(DgaPresentation, BraidLabels), BraidError> {
    check_mu(b, mu)?;
    let mut dga = DgaPresentation::new(format!("braid {b}"), 0);
    let labels = add_braid_generators(&mut dga, b, mu, 0);
    solve_braid_differential(&mut dga, b, mu, &labels)?;
    Ok((dga, labels))
}

/// Labels with no algebra behind them, for standalone path matrices.
pub fn standalone_labels(b: &BraidWord, mu: &[i64]) -> (DgaPresentation, BraidLabels) {
    let mut dga = DgaPresentation::new(format!("braid {b}"), 0);
    let labels = add_braid_generators(&mut dga, b, mu, 0);
    (dga, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let b = BraidWord::parse(4, "s1 s2s1 s3").unwrap();
        assert_eq!(b.letters(), &[1, 2, 1, 3]);
        assert_eq!(b.to_string(), "s1 s2 s1 s3");
        assert!(BraidWord::parse(2, "s2").is_err());
        assert!(BraidWord::parse(3, "x1").is_err());
        assert!(BraidWord::parse(2, "").unwrap().is_empty());
    }

    #[test]
    fn permutations_of_examples() {
        let a = BraidWord::parse(4, "s1 s2 s1 s3").unwrap();
        let b = BraidWord::parse(4, "s2 s1 s2 s3").unwrap();
        assert_eq!(permutation_of(&a), vec![3, 2, 4, 1]);
        assert_eq!(cycle_string(&permutation_of(&a)), "(1 3 4)");
        assert_eq!(permutation_of(&b), permutation_of(&a));
        assert!(!is_reduced(&a));
        assert!(is_reduced(&b));
        assert!(!is_reduced(&BraidWord::parse(2, "s1 s1").unwrap()));
        assert_eq!(reduced_word(&[3, 2, 4, 1]).unwrap(), b);
    }

    #[test]
    fn a2_path_matrices() {
        let b = BraidWord::parse(2, "s1").unwrap();
        let (dga, l) = braid_dga(&b, &[0, 0]).unwrap();
        let p = path_matrix_xy(&b, &[0, 0], &l).unwrap();
        let f = |m: &NcPoly| dga.format_poly(m);
        assert_eq!(f(p.get(0, 0)), "t1*p1");
        assert_eq!(f(p.get(0, 1)), "t1 + t1*p1*x12");
        assert_eq!(f(p.get(1, 0)), "t2");
        assert_eq!(f(p.get(1, 1)), "t2*x12");
        assert_eq!(f(&dga.differential[l.p[0] as usize]), "-t1^-1*y12*t2");
        assert_eq!(f(&dga.differential[l.x[&(1, 2)] as usize]), "y12");
        assert!(dga.check().ok());
    }

    #[test]
    fn identity_braid_differential() {
        let b = BraidWord::identity(2);
        let (dga, l) = braid_dga(&b, &[0, 0]).unwrap();
        assert_eq!(dga.format_poly(&dga.differential[l.x[&(1, 2)] as usize]), "y12 - t1^-1*y12*t2");
    }
}
