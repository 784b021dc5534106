use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::FiniteQuandle;

/// Structural flags of a finite quandle, each decided by exhaustive check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub abelian: bool,
    pub commutative: bool,
    pub involutary: bool,
    pub flat: bool,
    pub trivial: bool,
    /// A single orbit under the inner automorphism group.
    pub connected: bool,
}

impl FiniteQuandle {
    pub fn check_properties(&self) -> PropertyReport {
        PropertyReport {
            abelian: self.is_abelian(),
            commutative: self.is_commutative(),
            involutary: self.is_involutary(),
            flat: self.is_flat(),
            trivial: self.is_trivial(),
            connected: self.is_connected(),
        }
    }

    /// `(x*y)*(z*w) = (x*z)*(y*w)` for all quadruples.
    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    let xz = self.op(x, z);
                    for w in 0..n {
                        if self.op(xy, self.op(z, w)) != self.op(xz, self.op(y, w)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| self.op(x, y) == self.op(y, x)))
    }

    /// `S_x ∘ S_x = id` for every `x`.
    pub fn is_involutary(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.op(self.op(y, x), x) == y))
    }

    /// The group generated by all `S_x ∘ S_y` is abelian, decided by pairwise
    /// commutation of the (deduplicated) generators.
    pub fn is_flat(&self) -> bool {
        let n = self.order();
        let mut gens: HashSet<Vec<u32>> = HashSet::new();
        for x in 0..n {
            for y in 0..n {
                let g: Vec<u32> = (0..n).map(|z| self.op(self.op(z, y), x) as u32).collect();
                gens.insert(g);
            }
        }
        let gens: Vec<Vec<u32>> = gens.into_iter().collect();
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                if (0..n).any(|z| g[h[z] as usize] != h[g[z] as usize]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_trivial(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.op(x, y) == x))
    }

    pub fn is_connected(&self) -> bool {
        self.inner_orbits().len() == 1
    }

    /// Orbits of the inner automorphism group, each sorted, in order of their
    /// least element.
    pub fn inner_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for y in 0..n {
            for x in 0..n {
                let a = find(&mut parent, x);
                let b = find(&mut parent, self.op(x, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if slot[r] == usize::MAX {
                slot[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[slot[r]].push(x);
        }
        orbits
    }
}
