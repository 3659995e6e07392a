//! Dense matrices over a [`Field`], plus affine solving.

use crate::gf::{Fe, Field};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        FqMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn square(n: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), n * n);
        FqMatrix { rows: n, cols: n, data }
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).take(self.rows).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &Field, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FqMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Field, other: &FqMatrix) -> FqMatrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: &Field, other: &FqMatrix) -> FqMatrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &Field, c: Fe) -> FqMatrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut m = self.clone();
        row_reduce(f, &mut m, self.cols).len()
    }

    pub fn inverse(&self, f: &Field) -> Option<FqMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut aug = FqMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        if row_reduce(f, &mut aug, n).len() < n {
            return None;
        }
        let mut inv = FqMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn format(&self, f: &Field) -> String {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(|&x| f.format(x)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Gauss-Jordan on the first `pivot_cols` columns; returns pivot columns.
pub fn row_reduce(f: &Field, m: &mut FqMatrix, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
        if pr != r {
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).unwrap();
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            let factor = m.get(i, c);
            if i != r && factor != 0 {
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    pivots
}

/// Solution set `{x : A x = b}` as a particular solution and a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    pub point: Vec<Fe>,
    pub basis: Vec<Vec<Fe>>,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Calls `visit` on every point of the space.
    pub fn for_each(&self, f: &Field, mut visit: impl FnMut(&[Fe])) {
        let q = f.q() as usize;
        let k = self.basis.len();
        let mut coeffs = vec![0usize; k];
        let mut x = self.point.clone();
        loop {
            visit(&x);
            let mut i = 0;
            loop {
                if i == k {
                    return;
                }
                let old = coeffs[i] as Fe;
                coeffs[i] = (coeffs[i] + 1) % q;
                let step = f.sub(coeffs[i] as Fe, old);
                for (xv, &bv) in x.iter_mut().zip(&self.basis[i]) {
                    *xv = f.add(*xv, f.mul(step, bv));
                }
                if coeffs[i] != 0 {
                    break;
                }
                i += 1;
            }
        }
    }
}

/// Solves `A x = b` where `aug = [A | b]` has `vars + 1` columns.
pub fn solve_affine(f: &Field, aug: &mut FqMatrix, vars: usize) -> Option<AffineSpace> {
    let pivots = row_reduce(f, aug, vars);
    if (pivots.len()..aug.rows).any(|i| aug.get(i, vars) != 0) {
        return None;
    }
    let mut point = vec![0; vars];
    for (r, &c) in pivots.iter().enumerate() {
        point[c] = aug.get(r, vars);
    }
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; vars];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..vars).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; vars];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(aug.get(r, free));
        }
        basis.push(v);
    }
    Some(AffineSpace { point, basis })
}

/// Every matrix whose support lies inside `mask` (row-major booleans).
pub fn masked_matrices(f: &Field, n: usize, mask: &[bool]) -> impl Iterator<Item = FqMatrix> {
    let slots: Vec<usize> = (0..n * n).filter(|&i| mask[i]).collect();
    let q = f.q() as u64;
    let total = q.pow(slots.len() as u32);
    (0..total).map(move |mut code| {
        let mut m = FqMatrix::zeros(n, n);
        for &s in &slots {
            m.data[s] = (code % q) as Fe;
            code /= q;
        }
        m
    })
}

pub fn gl_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_counts_match_enumeration() {
        for (n, q) in [(1usize, 3u64), (2, 2), (2, 3), (3, 2)] {
            let f = Field::new(q).unwrap();
            let mask = vec![true; n * n];
            let count = masked_matrices(&f, n, &mask).filter(|m| m.is_invertible(&f)).count();
            assert_eq!(count as u128, gl_order(n as u32, q));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::new(9).unwrap();
        let a = FqMatrix::from_rows(&[vec![1, 4, 0], vec![2, 7, 3], vec![0, 5, 8]]);
        if let Some(ai) = a.inverse(&f) {
            assert_eq!(a.mul(&f, &ai), FqMatrix::identity(3));
        } else {
            assert!(a.rank(&f) < 3);
        }
    }

    #[test]
    fn affine_points_cover_prime_power_fields() {
        for q in [4, 8, 9] {
            let f = Field::new(q).unwrap();
            let space = AffineSpace { point: vec![1, 0], basis: vec![vec![1, 0], vec![0, 1]] };
            let mut seen = std::collections::HashSet::new();
            space.for_each(&f, |x| {
                seen.insert(x.to_vec());
            });
            assert_eq!(seen.len() as u64, q * q);
        }
    }

    #[test]
    fn affine_solutions_satisfy_system() {
        let f = Field::new(5).unwrap();
        let mut aug = FqMatrix::from_rows(&[vec![1, 2, 3, 4], vec![2, 4, 2, 3]]);
        let a = aug.clone();
        let sp = solve_affine(&f, &mut aug, 3).unwrap();
        assert_eq!(sp.dim(), 1);
        let mut seen = 0;
        sp.for_each(&f, |x| {
            seen += 1;
            for r in 0..2 {
                let lhs = (0..3).fold(0, |acc, c| f.add(acc, f.mul(a.get(r, c), x[c])));
                assert_eq!(lhs, a.get(r, 3));
            }
        });
        assert_eq!(seen, 5);
        let mut bad = FqMatrix::from_rows(&[vec![1, 1, 1], vec![2, 2, 3]]);
        assert!(solve_affine(&f, &mut bad, 2).is_none());
    }
}
