//! Isomorphism testing, isomorphism-invariant fingerprints and canonical forms.

use serde::{Deserialize, Serialize};

use super::FiniteQuandle;

/// Orders up to which [`canonical_table`] enumerates all relabelings.
pub const CANONICAL_MAX_ORDER: usize = 8;

/// Per-element invariant: any isomorphism maps an element to one with the same
/// signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementSignature {
    /// Sorted cycle lengths of `S_x : y ↦ y * x`.
    pub column_cycles: Vec<u32>,
    /// Number of `y` with `x * y = x`.
    pub row_fixed: u32,
    /// Size of the image of `y ↦ x * y`.
    pub row_image: u32,
    /// Size of the inner orbit of `x`.
    pub orbit: u32,
}

/// Isomorphism-invariant summary of a quandle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub signatures: Vec<ElementSignature>,
}

pub(crate) fn element_signatures(q: &FiniteQuandle) -> Vec<ElementSignature> {
    let n = q.order();
    let mut orbit_size = vec![0u32; n];
    for orbit in q.inner_orbits() {
        for &x in &orbit {
            orbit_size[x] = orbit.len() as u32;
        }
    }
    let mut seen = vec![false; n];
    let mut hit = vec![false; n];
    (0..n)
        .map(|x| {
            seen.iter_mut().for_each(|s| *s = false);
            let mut cycles = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut y = start;
                while !seen[y] {
                    seen[y] = true;
                    y = q.op(y, x);
                    len += 1;
                }
                cycles.push(len);
            }
            cycles.sort_unstable();
            hit.iter_mut().for_each(|h| *h = false);
            let mut row_fixed = 0;
            for y in 0..n {
                let v = q.op(x, y);
                hit[v] = true;
                if v == x {
                    row_fixed += 1;
                }
            }
            ElementSignature {
                column_cycles: cycles,
                row_fixed,
                row_image: hit.iter().filter(|&&h| h).count() as u32,
                orbit: orbit_size[x],
            }
        })
        .collect()
}

pub fn fingerprint(q: &FiniteQuandle) -> Fingerprint {
    let mut signatures = element_signatures(q);
    signatures.sort();
    Fingerprint { order: q.order(), signatures }
}

/// Backtracking search for isomorphisms `a → b` with closure propagation.
pub(crate) struct IsoSearch<'a> {
    a: &'a FiniteQuandle,
    b: &'a FiniteQuandle,
    sig_a: Vec<ElementSignature>,
    sig_b: Vec<ElementSignature>,
    order: Vec<usize>,
}

#[derive(Clone)]
struct IsoState {
    g: Vec<u32>,
    ginv: Vec<u32>,
    assigned: Vec<usize>,
}

const UNSET: u32 = u32::MAX;

impl<'a> IsoSearch<'a> {
    /// Returns `None` when the fingerprints already differ.
    pub(crate) fn new(a: &'a FiniteQuandle, b: &'a FiniteQuandle) -> Option<Self> {
        if a.order() != b.order() {
            return None;
        }
        let sig_a = element_signatures(a);
        let sig_b = element_signatures(b);
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        // Inner-orbit representatives first: their images pin down most of the
        // map through closure.
        let orbits = a.inner_orbits();
        let mut order: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
        let mut is_rep = vec![false; a.order()];
        order.iter().for_each(|&r| is_rep[r] = true);
        order.extend((0..a.order()).filter(|&x| !is_rep[x]));
        Some(IsoSearch { a, b, sig_a, sig_b, order })
    }

    fn empty_state(&self) -> IsoState {
        let n = self.a.order();
        IsoState { g: vec![UNSET; n], ginv: vec![UNSET; n], assigned: Vec::with_capacity(n) }
    }

    /// Assigns `x ↦ y` and closes under `*` and `∗̄`. Returns false on conflict.
    fn assign(&self, st: &mut IsoState, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if st.g[x] != UNSET {
                if st.g[x] as usize != y {
                    return false;
                }
                continue;
            }
            if st.ginv[y] != UNSET || self.sig_a[x] != self.sig_b[y] {
                return false;
            }
            st.g[x] = y as u32;
            st.ginv[y] = x as u32;
            st.assigned.push(x);
            for i in 0..st.assigned.len() {
                let e = st.assigned[i];
                let ge = st.g[e] as usize;
                queue.push((self.a.op(x, e), self.b.op(y, ge)));
                queue.push((self.a.op(e, x), self.b.op(ge, y)));
                queue.push((self.a.left_inverse(x, e), self.b.left_inverse(y, ge)));
                queue.push((self.a.left_inverse(e, x), self.b.left_inverse(ge, y)));
            }
        }
        true
    }

    fn next_unassigned(&self, st: &IsoState) -> Option<usize> {
        self.order.iter().copied().find(|&x| st.g[x] == UNSET)
    }

    fn dfs(&self, st: IsoState, out: &mut Vec<Vec<u32>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let Some(x) = self.next_unassigned(&st) else {
            out.push(st.g);
            return;
        };
        for y in 0..self.b.order() {
            if st.ginv[y] != UNSET || self.sig_a[x] != self.sig_b[y] {
                continue;
            }
            let mut next = st.clone();
            if self.assign(&mut next, x, y) {
                self.dfs(next, out, limit);
                if out.len() >= limit {
                    return;
                }
            }
        }
    }

    /// Candidate images for the first decision element.
    pub(crate) fn first_branches(&self) -> Vec<(usize, usize)> {
        let x = self.order[0];
        (0..self.b.order()).filter(|&y| self.sig_a[x] == self.sig_b[y]).map(|y| (x, y)).collect()
    }

    /// All isomorphisms extending the first decision `x ↦ y`, at most `limit`.
    pub(crate) fn solve_branch(&self, x: usize, y: usize, limit: usize) -> Vec<Vec<u32>> {
        let mut st = self.empty_state();
        let mut out = Vec::new();
        if self.assign(&mut st, x, y) {
            self.dfs(st, &mut out, limit);
        }
        out
    }

    pub(crate) fn first(&self) -> Option<Vec<u32>> {
        self.first_branches()
            .into_iter()
            .find_map(|(x, y)| self.solve_branch(x, y, 1).into_iter().next())
    }
}

/// An isomorphism `a → b` as a 0-based image array, or `None`.
pub fn are_isomorphic(a: &FiniteQuandle, b: &FiniteQuandle) -> Option<Vec<u32>> {
    IsoSearch::new(a, b)?.first()
}

/// The lexicographically least row-major table over all relabelings.
///
/// Only defined for orders up to [`CANONICAL_MAX_ORDER`]; returns `None` above.
pub fn canonical_table(q: &FiniteQuandle) -> Option<Vec<u32>> {
    let n = q.order();
    if n > CANONICAL_MAX_ORDER {
        return None;
    }
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut candidate = vec![0u32; n * n];
    let mut visit = |g: &[u32]| {
        for x in 0..n {
            for y in 0..n {
                candidate[g[x] as usize * n + g[y] as usize] = g[q.op(x, y)];
            }
        }
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate.clone());
        }
    };
    // Heap's algorithm, iterative.
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}
