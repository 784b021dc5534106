//! Backtracking with forward propagation over quandle-valued variables.
//!
//! Every enumeration in the crate (colorings, homomorphisms, actions,
//! derivations and their virtual variants) is an instance of one constraint
//! system over variables taking values in a finite quandle `T`:
//!
//! * **ternary** constraints `v[out] = v[inp] * τ(v[over])`, where `τ` is an
//!   optional per-constraint permutation (the action twist for derivations);
//!   any two of `inp`, `over` determine `out`, and `out`, `over` determine
//!   `inp` through the left inverse;
//! * **unary** constraints `v[out] = μ(v[inp])` for a permutation `μ`
//!   (virtual crossings and intertwining conditions);
//! * per-variable **domains** (the idempotency filter for derivations).
//!
//! Variables are decided in descending constraint degree; each decision is
//! propagated to a fixpoint and contradictions prune the branch. Solutions
//! are returned sorted lexicographically.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::quandle::FiniteQuandle;
use crate::{par, Error, Result};

/// Search limits shared by all engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum decision nodes per search task.
    pub node_budget: u64,
    /// Maximum order of any permutation group built by closure or search.
    pub max_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { node_budget: 100_000_000, max_group_order: 1_000_000 }
    }
}

const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Ternary {
    out: u32,
    inp: u32,
    over: u32,
    twist: u32,
}

#[derive(Debug, Clone, Copy)]
struct Unary {
    out: u32,
    inp: u32,
    map: u32,
}

#[derive(Debug, Clone, Copy)]
enum Link {
    Ternary(u32),
    Unary(u32),
}

/// A constraint system over a target quandle.
pub struct ConstraintSystem<'a> {
    target: &'a FiniteQuandle,
    vars: usize,
    ternary: Vec<Ternary>,
    unary: Vec<Unary>,
    /// Permutations of the target with their inverses; index 0 is unused
    /// (`twist == 0` means no twist).
    perms: Vec<(Vec<u32>, Vec<u32>)>,
    domains: Vec<Option<Vec<bool>>>,
}

impl<'a> ConstraintSystem<'a> {
    pub fn new(target: &'a FiniteQuandle, vars: usize) -> Self {
        ConstraintSystem {
            target,
            vars,
            ternary: Vec::new(),
            unary: Vec::new(),
            perms: vec![(Vec::new(), Vec::new())],
            domains: vec![None; vars],
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Registers a permutation of the target (0-based images) and returns its
    /// handle for use as a twist or unary map.
    pub fn add_perm(&mut self, images: Vec<u32>) -> u32 {
        let mut inv = vec![0u32; images.len()];
        for (i, &v) in images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        self.perms.push((images, inv));
        (self.perms.len() - 1) as u32
    }

    /// `v[out] = v[inp] * v[over]`.
    pub fn relation(&mut self, out: usize, inp: usize, over: usize) {
        self.twisted_relation(out, inp, over, None);
    }

    /// `v[out] = v[inp] * twist(v[over])`.
    pub fn twisted_relation(&mut self, out: usize, inp: usize, over: usize, twist: Option<u32>) {
        self.ternary.push(Ternary { out: out as u32, inp: inp as u32, over: over as u32, twist: twist.unwrap_or(0) });
    }

    /// `v[out] = map(v[inp])`.
    pub fn mapped(&mut self, out: usize, inp: usize, map: u32) {
        self.unary.push(Unary { out: out as u32, inp: inp as u32, map });
    }

    /// Restricts the values `var` may take.
    pub fn restrict(&mut self, var: usize, allowed: impl Fn(usize) -> bool) {
        let m = self.target.order();
        let mask: Vec<bool> = (0..m).map(|x| self.domains[var].as_ref().is_none_or(|d| d[x]) && allowed(x)).collect();
        self.domains[var] = Some(mask);
    }

    fn links(&self) -> Vec<Vec<Link>> {
        let mut links = vec![Vec::new(); self.vars];
        for (i, t) in self.ternary.iter().enumerate() {
            let mut vs = vec![t.out, t.inp, t.over];
            vs.sort_unstable();
            vs.dedup();
            for v in vs {
                links[v as usize].push(Link::Ternary(i as u32));
            }
        }
        for (i, u) in self.unary.iter().enumerate() {
            links[u.out as usize].push(Link::Unary(i as u32));
            if u.inp != u.out {
                links[u.inp as usize].push(Link::Unary(i as u32));
            }
        }
        links
    }

    /// Decision order: descending constraint degree, then index.
    fn decision_order(&self, links: &[Vec<Link>]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vars).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(links[v].len()), v));
        order
    }

    /// All solutions, sorted lexicographically. The first decision level is
    /// split across workers when `parallel` is set.
    pub fn solve(&self, budget: u64, parallel: bool) -> Result<Vec<Vec<u32>>> {
        let solver = Solver::new(self, budget);
        let mut out = if self.vars == 0 {
            vec![Vec::new()]
        } else {
            let first = solver.order[0];
            let candidates: Vec<u32> = (0..self.target.order() as u32).filter(|&x| solver.allowed(first, x)).collect();
            let run = |&x: &u32| -> Result<Vec<Vec<u32>>> {
                let mut st = solver.fresh_state();
                let mut found = Vec::new();
                solver.tick()?;
                if solver.assign_and_propagate(&mut st, first, x) {
                    solver.dfs(&mut st, &mut found)?;
                }
                Ok(found)
            };
            let parts = if parallel && par::enabled() {
                par::try_map(&candidates, run)?
            } else {
                candidates.iter().map(run).collect::<Result<Vec<_>>>()?
            };
            parts.into_iter().flatten().collect()
        };
        out.sort_unstable();
        Ok(out)
    }

    /// Checks a complete assignment against every constraint and domain.
    pub fn satisfied_by(&self, values: &[u32]) -> bool {
        if values.len() != self.vars {
            return false;
        }
        let t = self.target;
        let dom_ok = values.iter().enumerate().all(|(v, &x)| self.domains[v].as_ref().is_none_or(|d| d[x as usize]));
        dom_ok
            && self.ternary.iter().all(|c| {
                let over = values[c.over as usize] as usize;
                let over = if c.twist == 0 { over } else { self.perms[c.twist as usize].0[over] as usize };
                t.op(values[c.inp as usize] as usize, over) as u32 == values[c.out as usize]
            })
            && self.unary.iter().all(|c| self.perms[c.map as usize].0[values[c.inp as usize] as usize] == values[c.out as usize])
    }
}

struct Solver<'s, 'a> {
    sys: &'s ConstraintSystem<'a>,
    links: Vec<Vec<Link>>,
    order: Vec<usize>,
    budget: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

struct State {
    values: Vec<u32>,
    trail: Vec<u32>,
    queue: Vec<u32>,
}

impl<'s, 'a> Solver<'s, 'a> {
    fn new(sys: &'s ConstraintSystem<'a>, budget: u64) -> Self {
        let links = sys.links();
        let order = sys.decision_order(&links);
        Solver { sys, links, order, budget, nodes: AtomicU64::new(0), exhausted: AtomicBool::new(false) }
    }

    fn fresh_state(&self) -> State {
        State { values: vec![UNSET; self.sys.vars], trail: Vec::new(), queue: Vec::new() }
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget || self.exhausted.load(Ordering::Relaxed) {
            self.exhausted.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    #[inline]
    fn allowed(&self, var: usize, x: u32) -> bool {
        self.sys.domains[var].as_ref().is_none_or(|d| d[x as usize])
    }

    #[inline]
    fn twist(&self, handle: u32, x: u32) -> usize {
        if handle == 0 {
            x as usize
        } else {
            self.sys.perms[handle as usize].0[x as usize] as usize
        }
    }

    /// Sets `var = x` (or checks it) and queues it. False on contradiction.
    #[inline]
    fn set(&self, st: &mut State, var: u32, x: u32) -> bool {
        let cur = st.values[var as usize];
        if cur != UNSET {
            return cur == x;
        }
        if !self.allowed(var as usize, x) {
            return false;
        }
        st.values[var as usize] = x;
        st.trail.push(var);
        st.queue.push(var);
        true
    }

    fn assign_and_propagate(&self, st: &mut State, var: usize, x: u32) -> bool {
        st.queue.clear();
        if !self.set(st, var as u32, x) {
            return false;
        }
        let t = self.sys.target;
        while let Some(v) = st.queue.pop() {
            for link in &self.links[v as usize] {
                match *link {
                    Link::Ternary(i) => {
                        let c = self.sys.ternary[i as usize];
                        let (o, a, b) = (st.values[c.out as usize], st.values[c.inp as usize], st.values[c.over as usize]);
                        if b == UNSET {
                            continue;
                        }
                        let tb = self.twist(c.twist, b);
                        if a != UNSET {
                            if !self.set(st, c.out, t.op(a as usize, tb) as u32) {
                                return false;
                            }
                        } else if o != UNSET && !self.set(st, c.inp, t.left_inverse(o as usize, tb) as u32) {
                            return false;
                        }
                    }
                    Link::Unary(i) => {
                        let c = self.sys.unary[i as usize];
                        let (map, inv) = &self.sys.perms[c.map as usize];
                        let (o, a) = (st.values[c.out as usize], st.values[c.inp as usize]);
                        if a != UNSET {
                            if !self.set(st, c.out, map[a as usize]) {
                                return false;
                            }
                        } else if o != UNSET && !self.set(st, c.inp, inv[o as usize]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn undo_to(&self, st: &mut State, mark: usize) {
        while st.trail.len() > mark {
            let v = st.trail.pop().unwrap();
            st.values[v as usize] = UNSET;
        }
    }

    /// The unassigned variable whose assignment lets the most ternary
    /// constraints propagate; ties go to the static order.
    fn pick(&self, st: &State) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for &v in &self.order {
            if st.values[v] != UNSET {
                continue;
            }
            let known = |u: u32| u as usize == v || st.values[u as usize] != UNSET;
            let score = self.links[v]
                .iter()
                .filter(|l| match **l {
                    Link::Ternary(i) => {
                        let c = self.sys.ternary[i as usize];
                        known(c.over) && (known(c.inp) || known(c.out))
                    }
                    Link::Unary(_) => false,
                })
                .count();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn dfs(&self, st: &mut State, out: &mut Vec<Vec<u32>>) -> Result<()> {
        let Some(var) = self.pick(st) else {
            out.push(st.values.clone());
            return Ok(());
        };
        for x in 0..self.sys.target.order() as u32 {
            if !self.allowed(var, x) {
                continue;
            }
            self.tick()?;
            let mark = st.trail.len();
            if self.assign_and_propagate(st, var, x) {
                self.dfs(st, out)?;
            }
            self.undo_to(st, mark);
        }
        Ok(())
    }
}
