use std::collections::HashMap;
use std::fmt;

use crate::diagram::ArcPresentation;
use crate::perm::Permutation;
use crate::quandle::FiniteQuandle;

/// Words beyond this many are not generated.
const MAX_WORDS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Arc(u32),
    Star(u32, u32),
    Bar(u32, u32),
}

/// Where extending a derivation to words failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub left: String,
    pub right: String,
    /// `'*'` or `'/'` (the left inverse `∗̄`).
    pub op: char,
    pub expected: u32,
    pub found: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub depth: usize,
    pub words: usize,
    pub truncated: bool,
    pub violation: Option<ClosureWitness>,
}

impl ClosureReport {
    pub fn is_consistent(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "consistent to depth {} ({} words)", self.depth, self.words),
            Some(w) => write!(
                f,
                "violation at ({} {} {}): expected {}, found {}",
                w.left,
                w.op,
                w.right,
                w.expected + 1,
                w.found + 1
            ),
        }
    }
}

struct Extender<'a> {
    x: &'a FiniteQuandle,
    nodes: Vec<Node>,
    ids: HashMap<Node, u32>,
    f: Vec<u32>,
    phi: Vec<Permutation>,
    depth: Vec<usize>,
    /// (inp, over) -> out for `out = inp * over`.
    star_rel: HashMap<(u32, u32), Vec<u32>>,
    /// (out, over) -> inp.
    bar_rel: HashMap<(u32, u32), Vec<u32>>,
}

impl Extender<'_> {
    fn name(&self, id: u32) -> String {
        match self.nodes[id as usize] {
            Node::Arc(a) => format!("a{}", a + 1),
            Node::Star(u, v) => format!("({}*{})", self.name(u), self.name(v)),
            Node::Bar(u, v) => format!("({}/{})", self.name(u), self.name(v)),
        }
    }

    /// Value of `u * v` or `u ∗̄ v` from the values of `u` and `v`.
    fn value(&self, u: u32, v: u32, star: bool) -> (u32, Permutation) {
        let (fu, fv) = (self.f[u as usize] as usize, self.f[v as usize] as usize);
        let (pu, pv) = (&self.phi[u as usize], &self.phi[v as usize]);
        if star {
            (self.x.op(fu, pu.apply(fv)) as u32, pu.conjugate_by(pv))
        } else {
            let pw = pv.then(pu).then(&pv.inverse());
            (self.x.left_inverse(fu, pw.apply(fv)) as u32, pw)
        }
    }

    /// Existing words equal to `u op v` by a top-level rewrite.
    fn rewrites(&self, u: u32, v: u32, star: bool) -> Vec<u32> {
        let mut out = Vec::new();
        if u == v {
            out.push(u);
        }
        match (self.nodes[u as usize], star) {
            (Node::Bar(w, z), true) | (Node::Star(w, z), false) if z == v => out.push(w),
            _ => {}
        }
        if let (Node::Arc(a), Node::Arc(b)) = (self.nodes[u as usize], self.nodes[v as usize]) {
            let table = if star { &self.star_rel } else { &self.bar_rel };
            if let Some(targets) = table.get(&(a, b)) {
                out.extend(targets.iter().map(|&t| self.ids[&Node::Arc(t)]));
            }
        }
        out
    }

    /// Adds `u op v`, or checks it against the words it rewrites to.
    fn combine(&mut self, u: u32, v: u32, star: bool) -> Result<(), ClosureWitness> {
        let (fv, pv) = self.value(u, v, star);
        let targets = self.rewrites(u, v, star);
        for &t in &targets {
            if self.f[t as usize] != fv || self.phi[t as usize] != pv {
                return Err(ClosureWitness {
                    left: self.name(u),
                    right: self.name(v),
                    op: if star { '*' } else { '/' },
                    expected: self.f[t as usize],
                    found: fv,
                });
            }
        }
        if targets.is_empty() {
            let node = if star { Node::Star(u, v) } else { Node::Bar(u, v) };
            if !self.ids.contains_key(&node) {
                let d = 1 + self.depth[u as usize].max(self.depth[v as usize]);
                self.ids.insert(node, self.nodes.len() as u32);
                self.nodes.push(node);
                self.f.push(fv);
                self.phi.push(pv);
                self.depth.push(d);
            }
        }
        Ok(())
    }
}

/// Extends an arc assignment `f` and action `phi` (one automorphism per arc)
/// to all words of depth at most `depth` in `*` and `∗̄`, checking the
/// derivation condition wherever two words coincide by `x * x = x`,
/// `(x * y) ∗̄ y = x`, `(x ∗̄ y) * y = x` or a crossing relation. At depth 2
/// or more, right distributivity on triples of arcs is checked as well.
pub fn verify_derivation_closure(
    p: &ArcPresentation,
    x: &FiniteQuandle,
    phi: &[Permutation],
    f: &[u32],
    depth: usize,
) -> ClosureReport {
    let mut star_rel: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    let mut bar_rel: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for r in &p.relations {
        let (out, inp, over) = r.oriented();
        star_rel.entry((inp, over)).or_default().push(out);
        bar_rel.entry((out, over)).or_default().push(inp);
    }
    let n = p.arc_count;
    let mut ext = Extender {
        x,
        nodes: (0..n as u32).map(Node::Arc).collect(),
        ids: (0..n as u32).map(|a| (Node::Arc(a), a)).collect(),
        f: f.to_vec(),
        phi: phi.to_vec(),
        depth: vec![0; n],
        star_rel,
        bar_rel,
    };
    let mut truncated = false;
    let mut violation = None;
    'levels: for level in 1..=depth {
        let existing = ext.nodes.len() as u32;
        for u in 0..existing {
            for v in 0..existing {
                if ext.depth[u as usize].max(ext.depth[v as usize]) != level - 1 {
                    continue;
                }
                if ext.nodes.len() >= MAX_WORDS {
                    truncated = true;
                    break 'levels;
                }
                for star in [true, false] {
                    if let Err(w) = ext.combine(u, v, star) {
                        violation = Some(w);
                        break 'levels;
                    }
                }
            }
        }
    }
    if violation.is_none() && depth >= 2 {
        violation = distributivity(&ext, n as u32);
    }
    ClosureReport { depth, words: ext.nodes.len(), truncated, violation }
}

/// `(u * v) * w = (u * w) * (v * w)` on arc triples.
fn distributivity(ext: &Extender<'_>, n: u32) -> Option<ClosureWitness> {
    let x = ext.x;
    let val = |f: u32, p: &Permutation, g: u32, q: &Permutation| -> (u32, Permutation) {
        (x.op(f as usize, p.apply(g as usize)) as u32, p.conjugate_by(q))
    };
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let get = |a: u32| (ext.f[a as usize], &ext.phi[a as usize]);
                let ((fu, pu), (fv, pv), (fw, pw)) = (get(u), get(v), get(w));
                let (fuv, puv) = val(fu, pu, fv, pv);
                let (lhs, _) = val(fuv, &puv, fw, pw);
                let (fuw, puw) = val(fu, pu, fw, pw);
                let (fvw, pvw) = val(fv, pv, fw, pw);
                let (rhs, _) = val(fuw, &puw, fvw, &pvw);
                if lhs != rhs {
                    return Some(ClosureWitness {
                        left: format!("(a{}*a{})", u + 1, v + 1),
                        right: format!("a{}", w + 1),
                        op: '*',
                        expected: rhs,
                        found: lhs,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Source;
    use crate::derivations::{enumerate_actions, enumerate_derivations, ActionTarget};
    use crate::diagram::{arcs_and_relations, builtin};
    use crate::quandle::dihedral;
    use crate::search::Limits;

    #[test]
    fn constant_sigma_is_consistent() {
        let l = Limits::default();
        let t = ActionTarget::new(dihedral(15), &l).unwrap();
        let p = arcs_and_relations(&builtin("3_1").unwrap()).unwrap();
        let sigma = Permutation::from_cycles("(2,12)(3,8)(5,15)(6,11)(9,14)", 15).unwrap();
        let phi = vec![sigma; 3];
        for c in [0, 3, 6, 9, 12] {
            let r = verify_derivation_closure(&p, t.quandle(), &phi, &[c; 3], 2);
            assert!(r.is_consistent(), "{r}");
        }
    }

    #[test]
    fn all_small_derivations_are_consistent() {
        let l = Limits::default();
        let t = ActionTarget::new(dihedral(3), &l).unwrap();
        let p = arcs_and_relations(&builtin("3_1").unwrap()).unwrap();
        let src = Source::Diagram(&p);
        for a in enumerate_actions(src, &t, &l).unwrap() {
            let phi = a.permutations(&t);
            for f in enumerate_derivations(src, &t, &a, &l).unwrap() {
                assert!(verify_derivation_closure(&p, t.quandle(), &phi, &f, 2).is_consistent());
            }
        }
    }

    #[test]
    fn idempotency_violation_is_caught() {
        let p = arcs_and_relations(&builtin("3_1").unwrap()).unwrap();
        let d3 = dihedral(3);
        let c = Permutation::from_cycles("(1,2,3)", 3).unwrap();
        let r = verify_derivation_closure(&p, &d3, &vec![c; 3], &[0, 0, 0], 1);
        let w = r.violation.unwrap();
        assert_eq!((w.left.as_str(), w.right.as_str()), ("a1", "a1"));
    }
}
