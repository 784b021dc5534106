//! Automorphism groups, inner automorphism groups and conjugation quandles.

use std::collections::{HashSet, VecDeque};

use crate::par;
use crate::perm::Permutation;
use crate::quandle::{FiniteQuandle, IsoSearch};
use crate::search::Limits;
use crate::{Error, Result};

/// A finite permutation group, elements sorted lexicographically by one-line
/// notation. All downstream indices (Conj tables, action colorings) refer to
/// this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermutationGroup {
    /// Closes `generators` under products by breadth-first multiplication.
    pub fn generate(degree: usize, generators: Vec<Permutation>, bound: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in &generators {
                let p = h.then(g);
                if seen.insert(p.clone()) {
                    if seen.len() > bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    queue.push_back(p);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermutationGroup { degree, elements, generators })
    }

    /// Wraps a complete, closed element list (sorted here).
    fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        PermutationGroup { degree, generators: elements.clone(), elements }
    }

    /// Rebuilds a group from a stored element list. Degrees and the identity
    /// are checked; closure is trusted.
    pub fn from_closed_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = elements.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
        if !elements.iter().any(Permutation::is_identity) {
            return Err(Error::Invalid("group element list lacks the identity".into()));
        }
        Ok(Self::from_elements(degree, elements))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&Permutation::identity(self.degree)).expect("groups contain the identity")
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, g)| self.generators[i + 1..].iter().all(|h| g.then(h) == h.then(g)))
    }

    /// Checks closure under products; used by tests and debug assertions.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|g| self.elements.iter().all(|h| self.contains(&g.then(h))))
    }
}

/// `Aut(Q)`: every bijection `g` with `g(x*y) = g(x)*g(y)`.
///
/// Backtracking over images with closure propagation, starting from the
/// inner-orbit representatives. The first decision level is explored in
/// parallel; the final sort makes the result independent of scheduling.
pub fn automorphism_group(q: &FiniteQuandle, limits: &Limits) -> Result<PermutationGroup> {
    let search = IsoSearch::new(q, q).expect("a quandle matches its own fingerprint");
    let bound = limits.max_group_order;
    let branches = search.first_branches();
    let parts = par::map(&branches, |&(x, y)| search.solve_branch(x, y, bound + 1));
    let mut elements = Vec::new();
    for part in parts {
        elements.extend(part);
        if elements.len() > bound {
            return Err(Error::GroupTooLarge { bound });
        }
    }
    let elements = elements
        .into_iter()
        .map(|g| Permutation::from_images(g).expect("search yields bijections"))
        .collect();
    Ok(PermutationGroup::from_elements(q.order(), elements))
}

/// `Inn(Q)`: the closure of the right translations `S_x`.
pub fn inner_subgroup(q: &FiniteQuandle, limits: &Limits) -> Result<PermutationGroup> {
    let mut gens: Vec<Permutation> = (0..q.order())
        .map(|x| Permutation::from_images(q.right_translation(x)).expect("Q2 makes S_x bijective"))
        .collect();
    gens.sort();
    gens.dedup();
    PermutationGroup::generate(q.order(), gens, limits.max_group_order)
}

/// Whether `p` is an automorphism of `q`; on failure returns a witness pair.
pub fn check_automorphism(q: &FiniteQuandle, p: &Permutation) -> std::result::Result<(), (usize, usize)> {
    if p.degree() != q.order() {
        return Err((0, 0));
    }
    for x in 0..q.order() {
        for y in 0..q.order() {
            if p.apply(q.op(x, y)) != q.op(p.apply(x), p.apply(y)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// `Conj(G)` with `a * b = b⁻¹ a b` (right-action product); element `i` is
/// `G.element(i)`.
pub fn conj_quandle(g: &PermutationGroup) -> FiniteQuandle {
    let elems = g.elements();
    let n = elems.len();
    let inverses: Vec<Permutation> = elems.iter().map(Permutation::inverse).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in elems {
        for (b, b_inv) in elems.iter().zip(&inverses) {
            let c = b_inv.then(a).then(b);
            table.push(g.index_of(&c).expect("groups are closed under conjugation") as u32);
        }
    }
    FiniteQuandle::from_table(n, table).expect("conjugation quandles satisfy the axioms")
}
