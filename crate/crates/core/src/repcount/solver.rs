//! Planning and running the search over a [`ScalarSystem`].
//!
//! A plan is a fixed sequence of steps. Some blocks of variables are
//! enumerated; whenever a set of open equations becomes jointly linear in its
//! unassigned variables, those variables are solved for instead, branching
//! over the affine solution space. The enumeration order is chosen by a
//! memoized search minimising the estimated `log_q` of the tree size.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::system::{Block, ScalarSystem, Target, VarId};
use crate::gf::{Fe, Field};
use crate::matrix::{gl_order, FqMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    #[inline]
    fn get(&self, i: VarId) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: VarId) {
        self.0[i as usize / 64] |= 1 << (i % 64);
    }
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct CTerm {
    coeff: Fe,
    known: Vec<VarId>,
    col: u32,
}

#[derive(Debug, Clone)]
struct CEq {
    terms: Vec<CTerm>,
}

type UnitDomain = Arc<Vec<(FqMatrix, FqMatrix)>>;

#[derive(Debug, Clone)]
enum Step {
    Enumerate { vars: Vec<VarId>, dead: bool },
    Units { group: usize, domain: UnitDomain, dead: bool },
    Solve { unknowns: Vec<VarId>, eqs: Vec<CEq>, dead: bool },
    Derive { group: usize, from_t: bool, preassigned: Vec<bool> },
    Check { eqs: Vec<CEq> },
    Component { index: usize },
}

/// Description of one step, for `--explain` style output.
#[derive(Debug, Clone, serde::Serialize)]
pub struct StepInfo {
    pub kind: String,
    pub vars: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Plan {
    steps: Vec<Step>,
    pub estimated_log_q: f64,
}

enum PStep {
    Enum(usize),
    Free(usize),
    Solve(Vec<VarId>, Vec<usize>),
}

struct Planner<'a> {
    sys: &'a ScalarSystem,
    var_group: Vec<Option<usize>>,
    var_eqs: Vec<Vec<usize>>,
    coupled: Vec<bool>,
    unit_sizes: Vec<f64>,
    memo: HashMap<Bits, (f64, Option<usize>)>,
}

impl<'a> Planner<'a> {
    fn new(sys: &'a ScalarSystem) -> Self {
        let mut var_group = vec![None; sys.nvars];
        for (g, grp) in sys.groups.iter().enumerate() {
            for v in grp.t.iter().chain(&grp.u).flatten() {
                var_group[*v as usize] = Some(g);
            }
        }
        let mut var_eqs = vec![Vec::new(); sys.nvars];
        for (e, eq) in sys.equations.iter().enumerate() {
            for &v in &eq.vars {
                var_eqs[v as usize].push(e);
            }
        }
        let mut coupled = vec![false; sys.groups.len()];
        for c in &sys.components {
            if matches!(c.target, Target::Explicit(_)) && c.groups.len() > 1 {
                for &g in &c.groups {
                    coupled[g] = true;
                }
            }
        }
        let q = sys.field.q() as f64;
        let unit_sizes = (0..sys.groups.len()).map(|g| unit_domain_size(sys, g).max(1.0).ln() / q.ln()).collect();
        Planner { sys, var_group, var_eqs, coupled, unit_sizes, memo: HashMap::new() }
    }

    fn group_vars(&self, g: usize) -> impl Iterator<Item = VarId> + '_ {
        let grp = &self.sys.groups[g];
        grp.t.iter().chain(&grp.u).flatten().copied()
    }

    fn side_complete(&self, side: &[Option<VarId>], a: &Bits) -> bool {
        side.iter().flatten().all(|&v| a.get(v))
    }

    fn eq_open(&self, e: usize, a: &Bits) -> bool {
        self.sys.equations[e].vars.iter().any(|&v| !a.get(v))
    }

    fn linear_unknowns(&self, e: usize, a: &Bits) -> Option<Vec<VarId>> {
        let eq = &self.sys.equations[e];
        for t in &eq.terms {
            if t.vars.iter().filter(|&&v| !a.get(v)).count() > 1 {
                return None;
            }
        }
        Some(eq.vars.iter().copied().filter(|&v| !a.get(v)).collect())
    }

    fn block_unassigned(&self, b: usize, a: &Bits) -> Vec<VarId> {
        match &self.sys.blocks[b] {
            Block::Plain(vs) => vs.iter().copied().filter(|&v| !a.get(v)).collect(),
            Block::Unit(g) => self.group_vars(*g).filter(|&v| !a.get(v)).collect(),
        }
    }

    fn is_free(&self, b: usize, a: &Bits) -> bool {
        let un = self.block_unassigned(b, a);
        if un.is_empty() {
            return false;
        }
        let no_eq = un.iter().all(|&v| self.var_eqs[v as usize].is_empty() || self.var_eqs[v as usize].iter().all(|&e| !self.eq_open(e, a)));
        match &self.sys.blocks[b] {
            Block::Plain(vs) => no_eq && vs.iter().all(|&v| self.var_group[v as usize].is_none()),
            Block::Unit(g) => no_eq && !self.coupled[*g] && self.group_vars(*g).all(|v| !a.get(v)),
        }
    }

    /// Free variables, derivations and linear solves until nothing changes.
    fn closure(&self, a: &mut Bits, trace: &mut Vec<PStep>) -> f64 {
        let mut cost = 0.0;
        loop {
            let mut changed = false;
            for (g, grp) in self.sys.groups.iter().enumerate() {
                let done = self.group_vars(g).all(|v| a.get(v));
                if !done && (self.side_complete(&grp.t, a) || self.side_complete(&grp.u, a)) {
                    for v in self.group_vars(g).collect::<Vec<_>>() {
                        a.set(v);
                    }
                    changed = true;
                }
            }
            for b in 0..self.sys.blocks.len() {
                if self.is_free(b, a) {
                    for v in self.block_unassigned(b, a) {
                        a.set(v);
                    }
                    trace.push(PStep::Free(b));
                    changed = true;
                }
            }
            let mut parent: HashMap<VarId, VarId> = HashMap::new();
            fn find(p: &mut HashMap<VarId, VarId>, x: VarId) -> VarId {
                let mut r = x;
                while let Some(&n) = p.get(&r) {
                    if n == r {
                        break;
                    }
                    r = n;
                }
                p.insert(x, r);
                r
            }
            let mut linear = Vec::new();
            for e in 0..self.sys.equations.len() {
                if !self.eq_open(e, a) {
                    continue;
                }
                if let Some(un) = self.linear_unknowns(e, a) {
                    let r0 = find(&mut parent, un[0]);
                    for &v in &un[1..] {
                        let r = find(&mut parent, v);
                        parent.insert(r, r0);
                    }
                    parent.entry(un[0]).or_insert(un[0]);
                    linear.push((e, un));
                }
            }
            if !linear.is_empty() {
                let mut comps: Vec<(VarId, Vec<VarId>, Vec<usize>)> = Vec::new();
                for (e, un) in linear {
                    let r = find(&mut parent, un[0]);
                    let c = match comps.iter().position(|c| c.0 == r) {
                        Some(c) => c,
                        None => {
                            comps.push((r, Vec::new(), Vec::new()));
                            comps.len() - 1
                        }
                    };
                    comps[c].1.extend(un);
                    comps[c].2.push(e);
                }
                for (_, mut vars, eqs) in comps {
                    vars.sort_unstable();
                    vars.dedup();
                    cost += vars.len().saturating_sub(eqs.len()) as f64;
                    for &v in &vars {
                        a.set(v);
                    }
                    trace.push(PStep::Solve(vars, eqs));
                }
                changed = true;
            }
            if !changed {
                return cost;
            }
        }
    }

    fn enum_cost(&self, b: usize, a: &Bits) -> f64 {
        match &self.sys.blocks[b] {
            Block::Plain(_) => self.block_unassigned(b, a).len() as f64,
            Block::Unit(g) => {
                let grp = &self.sys.groups[*g];
                if self.group_vars(*g).all(|v| !a.get(v)) {
                    self.unit_sizes[*g]
                } else {
                    grp.t.iter().flatten().filter(|&&v| !a.get(v)).count() as f64
                }
            }
        }
    }

    fn apply_enum(&self, b: usize, a: &mut Bits) {
        match &self.sys.blocks[b] {
            Block::Plain(vs) => vs.iter().for_each(|&v| a.set(v)),
            Block::Unit(g) => {
                let grp = &self.sys.groups[*g];
                grp.t.iter().flatten().for_each(|&v| a.set(v));
            }
        }
    }

    fn candidates(&self, a: &Bits) -> Vec<usize> {
        (0..self.sys.blocks.len()).filter(|&b| !self.block_unassigned(b, a).is_empty()).collect()
    }

    fn best(&mut self, a: &Bits) -> f64 {
        if let Some(&(c, _)) = self.memo.get(a) {
            return c;
        }
        let cands = self.candidates(a);
        if cands.is_empty() {
            self.memo.insert(a.clone(), (0.0, None));
            return 0.0;
        }
        let greedy = self.sys.blocks.len() > 18;
        let mut best = (f64::INFINITY, None);
        for b in cands {
            let mut next = a.clone();
            self.apply_enum(b, &mut next);
            let mut scratch = Vec::new();
            let step = self.enum_cost(b, a) + self.closure(&mut next, &mut scratch);
            let total = if greedy { step } else { step + self.best(&next) };
            if total < best.0 - 1e-9 {
                best = (total, Some(b));
            }
        }
        if greedy {
            let b = best.1.unwrap();
            let mut next = a.clone();
            self.apply_enum(b, &mut next);
            let mut scratch = Vec::new();
            self.closure(&mut next, &mut scratch);
            best.0 += self.best(&next);
        }
        self.memo.insert(a.clone(), best);
        best.0
    }
}

fn unit_domain_size(sys: &ScalarSystem, g: usize) -> f64 {
    if let Some(Target::Explicit(set)) = single_target(sys, g) {
        return set.len() as f64;
    }
    let q = sys.field.q() as u64;
    let n = sys.n;
    let mut seen = vec![false; n];
    let mut size = 1.0;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&j| sys.unit_mask[i * n + j]).collect();
        class.iter().for_each(|&j| seen[j] = true);
        size *= gl_order(class.len() as u32, q) as f64;
    }
    size
}

fn single_target(sys: &ScalarSystem, g: usize) -> Option<&Target> {
    sys.components.iter().find(|c| c.groups == [g]).map(|c| &c.target)
}

/// Builds a plan; with `naive` every block is enumerated in presentation order.
pub fn make_plan(sys: &ScalarSystem, naive: bool, listing: bool) -> Plan {
    let planner = &mut Planner::new(sys);
    let mut a = Bits::new(sys.nvars);
    let mut trace = Vec::new();
    let mut estimate = 0.0;
    if naive {
        for b in 0..sys.blocks.len() {
            if !planner.block_unassigned(b, &a).is_empty() {
                estimate += planner.enum_cost(b, &a);
                planner.apply_enum(b, &mut a);
                trace.push(PStep::Enum(b));
                for (g, grp) in sys.groups.iter().enumerate() {
                    if planner.side_complete(&grp.t, &a) {
                        planner.group_vars(g).collect::<Vec<_>>().into_iter().for_each(|v| a.set(v));
                    }
                }
            }
        }
    } else {
        estimate += planner.closure(&mut a, &mut trace);
        planner.best(&a.clone());
        while let Some(&(_, Some(b))) = planner.memo.get(&a) {
            estimate += planner.enum_cost(b, &a);
            planner.apply_enum(b, &mut a);
            trace.push(PStep::Enum(b));
            estimate += planner.closure(&mut a, &mut trace);
        }
    }
    compile(sys, planner, trace, estimate, listing)
}

fn compile(sys: &ScalarSystem, planner: &Planner, trace: Vec<PStep>, estimate: f64, listing: bool) -> Plan {
    let f = &sys.field;
    let mut a = Bits::new(sys.nvars);
    let mut used = vec![false; sys.equations.len()];
    let mut group_done = vec![false; sys.groups.len()];
    let mut comp_done = vec![false; sys.components.len()];
    let mut steps = Vec::new();
    let compile_eq = |e: usize, cols: &HashMap<VarId, u32>| -> CEq {
        let terms = sys.equations[e]
            .terms
            .iter()
            .map(|t| {
                let mut known = Vec::new();
                let mut col = NONE;
                for &v in &t.vars {
                    match cols.get(&v) {
                        Some(&c) => col = c,
                        None => known.push(v),
                    }
                }
                CTerm { coeff: t.coeff, known, col }
            })
            .collect();
        CEq { terms }
    };
    let mut unit_cache: HashMap<usize, UnitDomain> = HashMap::new();
    let mut domain_for = |g: usize| -> UnitDomain {
        unit_cache
            .entry(g)
            .or_insert_with(|| {
                let target = single_target(sys, g).cloned().unwrap_or(Target::AllUnits);
                Arc::new(super::system::unit_list(f, sys.n, &sys.unit_mask, &target))
            })
            .clone()
    };
    let emit_checks = |steps: &mut Vec<Step>, a: &mut Bits, used: &mut Vec<bool>, group_done: &mut Vec<bool>, comp_done: &mut Vec<bool>| loop {
        let mut progressed = false;
        for (g, grp) in sys.groups.iter().enumerate() {
            if group_done[g] {
                continue;
            }
            let t_ok = planner.side_complete(&grp.t, a);
            let u_ok = planner.side_complete(&grp.u, a);
            if t_ok || u_ok {
                let side = if t_ok { &grp.u } else { &grp.t };
                let preassigned = side.iter().map(|v| v.is_some_and(|v| a.get(v))).collect();
                steps.push(Step::Derive { group: g, from_t: t_ok, preassigned });
                planner.group_vars(g).collect::<Vec<_>>().into_iter().for_each(|v| a.set(v));
                group_done[g] = true;
                progressed = true;
            }
        }
        let ready: Vec<usize> = (0..sys.equations.len()).filter(|&e| !used[e] && !planner.eq_open(e, a)).collect();
        if !ready.is_empty() {
            let eqs = ready.iter().map(|&e| compile_eq(e, &HashMap::new())).collect();
            ready.iter().for_each(|&e| used[e] = true);
            steps.push(Step::Check { eqs });
        }
        for (c, comp) in sys.components.iter().enumerate() {
            if !comp_done[c] && comp.groups.iter().all(|&g| group_done[g]) {
                comp_done[c] = true;
                if matches!(comp.target, Target::Explicit(_)) {
                    steps.push(Step::Component { index: c });
                }
            }
        }
        if !progressed {
            break;
        }
    };
    emit_checks(&mut steps, &mut a, &mut used, &mut group_done, &mut comp_done);
    for p in trace {
        match p {
            PStep::Enum(b) | PStep::Free(b) => {
                let free = matches!(p, PStep::Free(_));
                match &sys.blocks[b] {
                    Block::Unit(g) if planner.group_vars(*g).all(|v| !a.get(v)) => {
                        steps.push(Step::Units { group: *g, domain: domain_for(*g), dead: free && !listing });
                        planner.group_vars(*g).collect::<Vec<_>>().into_iter().for_each(|v| a.set(v));
                        group_done[*g] = true;
                    }
                    _ => {
                        let vars = planner.block_unassigned(b, &a);
                        let vars: Vec<VarId> = match &sys.blocks[b] {
                            Block::Unit(g) => sys.groups[*g].t.iter().flatten().copied().filter(|&v| !a.get(v)).collect(),
                            Block::Plain(_) => vars,
                        };
                        vars.iter().for_each(|&v| a.set(v));
                        steps.push(Step::Enumerate { vars, dead: free && !listing });
                    }
                }
            }
            PStep::Solve(vars, eqs) => {
                let cols: HashMap<VarId, u32> = vars.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
                let ceqs = eqs.iter().map(|&e| compile_eq(e, &cols)).collect();
                eqs.iter().for_each(|&e| used[e] = true);
                vars.iter().for_each(|&v| a.set(v));
                steps.push(Step::Solve { unknowns: vars, eqs: ceqs, dead: false });
            }
        }
        emit_checks(&mut steps, &mut a, &mut used, &mut group_done, &mut comp_done);
    }
    debug_assert!((0..sys.nvars as VarId).all(|v| a.get(v)));
    if !listing {
        mark_dead(sys, &mut steps);
    }
    Plan { steps, estimated_log_q: estimate }
}

fn reads(sys: &ScalarSystem, s: &Step) -> Vec<VarId> {
    let from_eqs = |eqs: &[CEq]| eqs.iter().flat_map(|e| e.terms.iter().flat_map(|t| t.known.iter().copied())).collect::<Vec<_>>();
    match s {
        Step::Solve { eqs, .. } | Step::Check { eqs } => from_eqs(eqs),
        Step::Derive { group, .. } => {
            let g = &sys.groups[*group];
            g.t.iter().chain(&g.u).flatten().copied().collect()
        }
        Step::Component { index } => {
            sys.components[*index].groups.iter().flat_map(|&g| sys.groups[g].t.iter().flatten().copied()).collect()
        }
        _ => Vec::new(),
    }
}

fn mark_dead(sys: &ScalarSystem, steps: &mut [Step]) {
    let mut read_later: HashSet<VarId> = HashSet::new();
    for s in steps.iter_mut().rev() {
        match s {
            Step::Enumerate { vars, dead } => *dead = *dead || vars.iter().all(|v| !read_later.contains(v)),
            Step::Solve { unknowns, dead, .. } => *dead = unknowns.iter().all(|v| !read_later.contains(v)),
            Step::Units { group, dead, .. } => {
                let g = &sys.groups[*group];
                *dead = *dead || g.t.iter().chain(&g.u).flatten().all(|v| !read_later.contains(v));
            }
            _ => {}
        }
        read_later.extend(reads(sys, s));
    }
}

impl Plan {
    pub fn describe(&self, sys: &ScalarSystem) -> Vec<StepInfo> {
        let names = |vs: &[VarId]| vs.iter().map(|&v| sys.var_names[v as usize].clone()).collect();
        self.steps
            .iter()
            .map(|s| match s {
                Step::Enumerate { vars, dead } => StepInfo { kind: if *dead { "free".into() } else { "enumerate".into() }, vars: names(vars) },
                Step::Units { group, dead, .. } => {
                    let vs: Vec<VarId> = sys.groups[*group].t.iter().flatten().copied().collect();
                    StepInfo { kind: if *dead { "free units".into() } else { "enumerate units".into() }, vars: names(&vs) }
                }
                Step::Solve { unknowns, .. } => StepInfo { kind: "solve".into(), vars: names(unknowns) },
                Step::Derive { group, .. } => StepInfo { kind: "invert".into(), vars: vec![sys.var_names[sys.groups[*group].t.iter().flatten().next().map_or(0, |&v| v) as usize].clone()] },
                Step::Check { eqs } => StepInfo { kind: format!("check {}", eqs.len()), vars: vec![] },
                Step::Component { index } => StepInfo { kind: format!("component {index}"), vars: vec![] },
            })
            .collect()
    }
}

struct Runner<'a> {
    sys: &'a ScalarSystem,
    f: &'a Field,
    steps: &'a [Step],
}

fn pow_u128(q: u128, k: usize) -> u128 {
    q.pow(k as u32)
}

impl Runner<'_> {
    fn eval_term(&self, t: &CTerm, vals: &[Fe]) -> Fe {
        let mut acc = t.coeff;
        for &v in &t.known {
            let x = vals[v as usize];
            if x == 0 {
                return 0;
            }
            acc = self.f.mul(acc, x);
        }
        acc
    }

    fn run(&self, i: usize, vals: &mut Vec<Fe>, visit: &mut Option<&mut dyn FnMut(&[Fe])>) -> u128 {
        if i == self.steps.len() {
            if let Some(v) = visit {
                v(vals);
            }
            return 1;
        }
        let f = self.f;
        let q = f.q() as u128;
        match &self.steps[i] {
            Step::Enumerate { vars, dead } => {
                if *dead && visit.is_none() {
                    return pow_u128(q, vars.len()) * self.run(i + 1, vals, visit);
                }
                vars.iter().for_each(|&v| vals[v as usize] = 0);
                let mut total = 0;
                loop {
                    total += self.run(i + 1, vals, visit);
                    let mut k = 0;
                    loop {
                        if k == vars.len() {
                            return total;
                        }
                        let slot = &mut vals[vars[k] as usize];
                        *slot += 1;
                        if (*slot as u128) < q {
                            break;
                        }
                        *slot = 0;
                        k += 1;
                    }
                }
            }
            Step::Units { group, domain, dead } => {
                if *dead && visit.is_none() {
                    return domain.len() as u128 * self.run(i + 1, vals, visit);
                }
                let grp = &self.sys.groups[*group];
                let mut total = 0;
                for (t, u) in domain.iter() {
                    for (e, v) in grp.t.iter().enumerate() {
                        if let Some(v) = v {
                            vals[*v as usize] = t.data[e];
                        }
                    }
                    for (e, v) in grp.u.iter().enumerate() {
                        if let Some(v) = v {
                            vals[*v as usize] = u.data[e];
                        }
                    }
                    total += self.run(i + 1, vals, visit);
                }
                total
            }
            Step::Check { eqs } => {
                for e in eqs {
                    let s = e.terms.iter().fold(0, |acc, t| f.add(acc, self.eval_term(t, vals)));
                    if s != 0 {
                        return 0;
                    }
                }
                self.run(i + 1, vals, visit)
            }
            Step::Solve { unknowns, eqs, dead } => {
                let k = unknowns.len();
                let w = k + 1;
                let mut m = FqMatrix::zeros(eqs.len(), w);
                for (r, e) in eqs.iter().enumerate() {
                    for t in &e.terms {
                        let v = self.eval_term(t, vals);
                        if v == 0 {
                            continue;
                        }
                        if t.col == NONE {
                            let x = f.sub(m.get(r, k), v);
                            m.set(r, k, x);
                        } else {
                            let c = t.col as usize;
                            let x = f.add(m.get(r, c), v);
                            m.set(r, c, x);
                        }
                    }
                }
                let Some(space) = crate::matrix::solve_affine(f, &mut m, k) else { return 0 };
                if *dead && visit.is_none() {
                    return pow_u128(q, space.dim()) * self.run(i + 1, vals, visit);
                }
                let mut total = 0;
                space.for_each(f, |x| {
                    for (c, &v) in unknowns.iter().enumerate() {
                        vals[v as usize] = x[c];
                    }
                    total += self.run(i + 1, vals, visit);
                });
                total
            }
            Step::Derive { group, from_t, preassigned } => {
                let grp = &self.sys.groups[*group];
                let (src, dst) = if *from_t { (&grp.t, &grp.u) } else { (&grp.u, &grp.t) };
                let n = self.sys.n;
                let mut mat = FqMatrix::zeros(n, n);
                for (e, v) in src.iter().enumerate() {
                    if let Some(v) = v {
                        mat.data[e] = vals[*v as usize];
                    }
                }
                let inv = if n == 1 {
                    match f.inv(mat.data[0]) {
                        Some(x) => FqMatrix::square(1, vec![x]),
                        None => return 0,
                    }
                } else {
                    match mat.inverse(f) {
                        Some(x) => x,
                        None => return 0,
                    }
                };
                for (e, v) in dst.iter().enumerate() {
                    match v {
                        None if inv.data[e] != 0 => return 0,
                        None => {}
                        Some(v) if preassigned[e] => {
                            if vals[*v as usize] != inv.data[e] {
                                return 0;
                            }
                        }
                        Some(v) => vals[*v as usize] = inv.data[e],
                    }
                }
                self.run(i + 1, vals, visit)
            }
            Step::Component { index } => {
                let comp = &self.sys.components[*index];
                let Target::Explicit(set) = &comp.target else { return self.run(i + 1, vals, visit) };
                let n = self.sys.n;
                let mut prod = FqMatrix::identity(n);
                for &g in &comp.groups {
                    let mut mat = FqMatrix::zeros(n, n);
                    for (e, v) in self.sys.groups[g].t.iter().enumerate() {
                        if let Some(v) = v {
                            mat.data[e] = vals[*v as usize];
                        }
                    }
                    prod = prod.mul(f, &mat);
                }
                if set.contains(&prod) {
                    self.run(i + 1, vals, visit)
                } else {
                    0
                }
            }
        }
    }
}

/// Number of points; the first enumeration step is split across threads.
pub fn count(sys: &ScalarSystem, plan: &Plan) -> u128 {
    let runner = Runner { sys, f: &sys.field, steps: &plan.steps };
    let first = plan.steps.iter().position(|s| matches!(s, Step::Enumerate { dead: false, .. } | Step::Units { dead: false, .. }));
    let Some(first) = first else {
        return runner.run(0, &mut vec![0; sys.nvars], &mut None);
    };
    let prefix_ok = plan.steps[..first].iter().all(|s| matches!(s, Step::Check { .. }));
    if !prefix_ok || rayon::current_num_threads() == 1 {
        return runner.run(0, &mut vec![0; sys.nvars], &mut None);
    }
    let mut base = vec![0; sys.nvars];
    for s in &plan.steps[..first] {
        let probe = Runner { sys, f: &sys.field, steps: std::slice::from_ref(s) };
        if probe.run(0, &mut base, &mut None) == 0 {
            return 0;
        }
    }
    let rest = Runner { sys, f: &sys.field, steps: &plan.steps[first + 1..] };
    let q = sys.field.q() as u64;
    match &plan.steps[first] {
        Step::Enumerate { vars, .. } => {
            let total = q.pow(vars.len() as u32);
            (0..total)
                .into_par_iter()
                .map(|mut code| {
                    let mut vals = base.clone();
                    for &v in vars {
                        vals[v as usize] = (code % q) as Fe;
                        code /= q;
                    }
                    rest.run(0, &mut vals, &mut None)
                })
                .sum()
        }
        Step::Units { group, domain, .. } => {
            let grp = &sys.groups[*group];
            domain
                .par_iter()
                .map(|(t, u)| {
                    let mut vals = base.clone();
                    for (e, v) in grp.t.iter().enumerate() {
                        if let Some(v) = v {
                            vals[*v as usize] = t.data[e];
                        }
                    }
                    for (e, v) in grp.u.iter().enumerate() {
                        if let Some(v) = v {
                            vals[*v as usize] = u.data[e];
                        }
                    }
                    rest.run(0, &mut vals, &mut None)
                })
                .sum()
        }
        _ => unreachable!(),
    }
}

/// Calls `visit` with every point, in a deterministic order.
pub fn for_each_point(sys: &ScalarSystem, plan: &Plan, mut visit: impl FnMut(&[Fe])) -> u128 {
    let runner = Runner { sys, f: &sys.field, steps: &plan.steps };
    let mut cb: &mut dyn FnMut(&[Fe]) = &mut visit;
    runner.run(0, &mut vec![0; sys.nvars], &mut Some(&mut cb))
}
