//! The scalar polynomial system whose `F_q`-points are the representations.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::gf::{Fe, Field};
use crate::matrix::{masked_matrices, FqMatrix};
use crate::ncdga::{DgaPresentation, GenId, Letter};
use crate::pathsets::graded_zero;

pub type VarId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Fe,
    /// Sorted, with repetition.
    pub vars: Vec<VarId>,
}

#[derive(Debug, Clone)]
pub struct Equation {
    pub label: String,
    pub terms: Vec<Monomial>,
    pub vars: Vec<VarId>,
}

/// Allowed values for an invertible generator.
#[derive(Debug, Clone)]
pub enum Target {
    AllUnits,
    Explicit(Arc<HashSet<FqMatrix>>),
}

/// Entries of `f(t)` and `f(t^{-1})`; `None` marks a position forced to zero.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    pub gen: GenId,
    pub t: Vec<Option<VarId>>,
    pub u: Vec<Option<VarId>>,
}

#[derive(Debug, Clone)]
pub struct ComponentCheck {
    pub groups: Vec<usize>,
    pub target: Target,
}

#[derive(Debug, Clone)]
pub struct ScalarSystem {
    pub field: Field,
    pub n: usize,
    pub nvars: usize,
    pub var_names: Vec<String>,
    pub equations: Vec<Equation>,
    pub groups: Vec<UnitGroup>,
    pub components: Vec<ComponentCheck>,
    /// Enumeration blocks: plain variables, or a unit group.
    pub blocks: Vec<Block>,
    /// Entry layout of every generator (`t` side for invertible ones).
    pub layout: Vec<Vec<Option<VarId>>>,
    pub unit_mask: Vec<bool>,
}

#[derive(Debug, Clone)]
pub enum Block {
    Plain(Vec<VarId>),
    Unit(usize),
}

type SymPoly = HashMap<Vec<VarId>, Fe>;

fn sym_mul(f: &Field, n: usize, a: &[SymPoly], b: &[SymPoly]) -> Vec<SymPoly> {
    let mut out = vec![SymPoly::new(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_empty() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if y.is_empty() {
                    continue;
                }
                let cell = &mut out[i * n + j];
                for (mx, &cx) in x {
                    for (my, &cy) in y {
                        let mut m = mx.clone();
                        m.extend_from_slice(my);
                        m.sort_unstable();
                        let e = cell.entry(m).or_insert(0);
                        *e = f.add(*e, f.mul(cx, cy));
                    }
                }
                cell.retain(|_, c| *c != 0);
            }
        }
    }
    out
}

fn sym_identity(n: usize) -> Vec<SymPoly> {
    let mut m = vec![SymPoly::new(); n * n];
    for i in 0..n {
        m[i * n + i].insert(Vec::new(), 1);
    }
    m
}

fn sym_vars(layout: &[Option<VarId>]) -> Vec<SymPoly> {
    layout
        .iter()
        .map(|e| {
            let mut p = SymPoly::new();
            if let Some(v) = e {
                p.insert(vec![*v], 1);
            }
            p
        })
        .collect()
}

pub struct SystemSpec<'a> {
    pub dga: &'a DgaPresentation,
    pub field: &'a Field,
    pub degrees: &'a [i64],
    pub d: &'a FqMatrix,
    pub m: u32,
    pub targets: &'a [Target],
    pub families: &'a [Vec<GenId>],
}

pub fn entry_mask(degrees: &[i64], k: i64, m: u32) -> Vec<bool> {
    let n = degrees.len();
    let mut mask = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            mask[i * n + j] = graded_zero(degrees[j] - degrees[i] - k, m);
        }
    }
    mask
}

/// All invertible matrices supported on `mask`, paired with their inverses.
pub fn unit_list(f: &Field, n: usize, mask: &[bool], target: &Target) -> Vec<(FqMatrix, FqMatrix)> {
    let keep = |m: &FqMatrix| -> Option<(FqMatrix, FqMatrix)> {
        let inv = m.inverse(f)?;
        Some((m.clone(), inv))
    };
    match target {
        Target::Explicit(set) => {
            let mut v: Vec<_> = set
                .iter()
                .filter(|m| m.data.iter().zip(mask).all(|(&x, &ok)| ok || x == 0))
                .filter_map(keep)
                .collect();
            v.sort();
            v
        }
        Target::AllUnits => masked_matrices(f, n, mask).filter_map(|m| keep(&m)).collect(),
    }
}

pub fn build(spec: &SystemSpec) -> ScalarSystem {
    let f = spec.field;
    let dga = spec.dga;
    let n = spec.degrees.len();
    let mut var_names = Vec::new();
    let mut layout = Vec::new();
    let mut groups = Vec::new();
    let mut group_of = HashMap::new();
    let unit_mask = entry_mask(spec.degrees, 0, spec.m);
    let alloc = |name: String, mask: &[bool], names: &mut Vec<String>| -> Vec<Option<VarId>> {
        mask.iter()
            .enumerate()
            .map(|(e, &ok)| {
                ok.then(|| {
                    names.push(if n == 1 { name.clone() } else { format!("{name}[{},{}]", e / n + 1, e % n + 1) });
                    (names.len() - 1) as VarId
                })
            })
            .collect()
    };
    for (g, gen) in dga.generators.iter().enumerate() {
        if gen.invertible {
            let t = alloc(gen.name.clone(), &unit_mask, &mut var_names);
            let u = alloc(format!("{}^-1", gen.name), &unit_mask, &mut var_names);
            group_of.insert(g as GenId, groups.len());
            groups.push(UnitGroup { gen: g as GenId, t: t.clone(), u });
            layout.push(t);
        } else {
            let mask = entry_mask(spec.degrees, gen.degree, spec.m);
            layout.push(alloc(gen.name.clone(), &mask, &mut var_names));
        }
    }
    let letter_matrix = |l: Letter| -> Vec<SymPoly> {
        if l.inv {
            sym_vars(&groups[group_of[&l.gen]].u)
        } else {
            sym_vars(&layout[l.gen as usize])
        }
    };
    let mut equations = Vec::new();
    for (g, gen) in dga.generators.iter().enumerate() {
        let mut lhs = vec![SymPoly::new(); n * n];
        for (w, c) in dga.differential[g].terms() {
            let c = f.from_int(c);
            if c == 0 {
                continue;
            }
            let mut acc = sym_identity(n);
            for &l in w.letters() {
                acc = sym_mul(f, n, &acc, &letter_matrix(l));
                if acc.iter().all(|e| e.is_empty()) {
                    break;
                }
            }
            for (cell, val) in lhs.iter_mut().zip(acc) {
                for (m, v) in val {
                    let e = cell.entry(m).or_insert(0);
                    *e = f.add(*e, f.mul(c, v));
                }
            }
        }
        let fg = &layout[g];
        let sgn = if gen.degree.rem_euclid(2) == 0 { 1 } else { -1 };
        for i in 0..n {
            for j in 0..n {
                let cell = &mut lhs[i * n + j];
                for k in 0..n {
                    if let Some(v) = fg[k * n + j] {
                        let dk = spec.d.get(i, k);
                        if dk != 0 {
                            let e = cell.entry(vec![v]).or_insert(0);
                            *e = f.sub(*e, dk);
                        }
                    }
                    if let Some(v) = fg[i * n + k] {
                        let dk = spec.d.get(k, j);
                        if dk != 0 {
                            let e = cell.entry(vec![v]).or_insert(0);
                            *e = f.add(*e, f.mul(f.from_int(sgn), dk));
                        }
                    }
                }
                cell.retain(|_, c| *c != 0);
            }
        }
        for (e, cell) in lhs.into_iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let mut terms: Vec<Monomial> = cell.into_iter().map(|(vars, coeff)| Monomial { coeff, vars }).collect();
            terms.sort_by(|a, b| a.vars.cmp(&b.vars));
            let mut vars: Vec<VarId> = terms.iter().flat_map(|t| t.vars.iter().copied()).collect();
            vars.sort_unstable();
            vars.dedup();
            let label = if n == 1 { format!("d{}", gen.name) } else { format!("d{}[{},{}]", gen.name, e / n + 1, e % n + 1) };
            equations.push(Equation { label, terms, vars });
        }
    }
    let components = dga
        .components
        .iter()
        .zip(spec.targets)
        .map(|(c, t)| {
            let start = c.basepoints.iter().position(|&b| b == c.initial).unwrap_or(0);
            let mut order = c.basepoints.clone();
            order.rotate_left(start);
            ComponentCheck { groups: order.iter().map(|b| group_of[b]).collect(), target: t.clone() }
        })
        .collect();
    let mut blocks = Vec::new();
    let mut in_family = HashSet::new();
    for fam in spec.families {
        let vars: Vec<VarId> = fam
            .iter()
            .filter(|g| !dga.gen(**g).invertible)
            .flat_map(|&g| layout[g as usize].iter().flatten().copied())
            .collect();
        in_family.extend(fam.iter().copied());
        if !vars.is_empty() {
            blocks.push(Block::Plain(vars));
        }
    }
    for (g, gen) in dga.generators.iter().enumerate() {
        if gen.invertible {
            blocks.push(Block::Unit(group_of[&(g as GenId)]));
        } else if !in_family.contains(&(g as GenId)) {
            let vars: Vec<VarId> = layout[g].iter().flatten().copied().collect();
            if !vars.is_empty() {
                blocks.push(Block::Plain(vars));
            }
        }
    }
    ScalarSystem {
        field: f.clone(),
        n,
        nvars: var_names.len(),
        var_names,
        equations,
        groups,
        components,
        blocks,
        layout,
        unit_mask,
    }
}
