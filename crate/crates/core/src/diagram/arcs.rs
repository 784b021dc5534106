//! Arc presentations: the generators and relations of the knot quandle read
//! off a diagram.

use serde::{Deserialize, Serialize};

use super::{CrossingKind, KnotDiagram, Sign};
use crate::{Error, Result};

/// One crossing relation on arcs (0-based): `z = x * y` for a positive
/// crossing, `x = z * y` for a negative one, with `x` the incoming under arc,
/// `z` the outgoing under arc and `y` the over arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcRelation {
    pub z: u32,
    pub x: u32,
    pub y: u32,
    pub sign: Sign,
}

impl ArcRelation {
    /// The relation as `(out, inp, over)` with `out = inp * over`.
    pub fn oriented(&self) -> (u32, u32, u32) {
        match self.sign {
            Sign::Positive => (self.z, self.x, self.y),
            Sign::Negative => (self.x, self.z, self.y),
        }
    }
}

/// A strand passing a virtual crossing: `out = α^exponent(in)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistRelation {
    pub out: u32,
    pub inp: u32,
    pub exponent: i8,
}

/// Arcs and relations of a diagram. Arcs break at under-crossings and at
/// virtual crossings; they are numbered by least edge label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcPresentation {
    pub arc_count: usize,
    /// Arc of each edge, indexed by `label - 1`.
    pub arc_of_edge: Vec<u32>,
    pub relations: Vec<ArcRelation>,
    pub twists: Vec<TwistRelation>,
}

impl ArcPresentation {
    pub fn is_classical(&self) -> bool {
        self.twists.is_empty()
    }

    /// Number of constraints touching each arc.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.arc_count];
        for r in &self.relations {
            for a in [r.z, r.x, r.y] {
                deg[a as usize] += 1;
            }
        }
        for t in &self.twists {
            deg[t.out as usize] += 1;
            deg[t.inp as usize] += 1;
        }
        deg
    }

    /// Deterministic byte encoding, used as a cache key.
    pub fn content_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        key.extend((self.arc_count as u32).to_le_bytes());
        for r in &self.relations {
            for v in [r.z, r.x, r.y] {
                key.extend(v.to_le_bytes());
            }
            key.push(r.sign.as_i8() as u8);
        }
        key.push(0xff);
        for t in &self.twists {
            key.extend(t.out.to_le_bytes());
            key.extend(t.inp.to_le_bytes());
            key.push(t.exponent as u8);
        }
        key
    }
}

/// The arc presentation of a classical diagram.
pub fn arcs_and_relations(d: &KnotDiagram) -> Result<ArcPresentation> {
    if !d.is_classical() {
        return Err(Error::NotClassical);
    }
    Ok(presentation(d))
}

/// Arc presentation of any diagram; virtual crossings contribute twist
/// relations. The `a → c` strand of a virtual crossing gets exponent `+1`
/// when it crosses from the other strand's left, `−1` otherwise, and the
/// other strand gets the opposite exponent.
pub(crate) fn presentation(d: &KnotDiagram) -> ArcPresentation {
    let edges = d.edge_count() as usize;
    let mut parent: Vec<usize> = (0..edges).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (c, kind) in d.crossings().iter().zip(d.kinds()) {
        if let CrossingKind::Classical(_) = kind {
            let a = find(&mut parent, c.over_in() as usize - 1);
            let b = find(&mut parent, c.over_out() as usize - 1);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut arc_of_root = vec![u32::MAX; edges];
    let mut arc_of_edge = vec![0u32; edges];
    let mut arc_count = 0;
    for (e, slot) in arc_of_edge.iter_mut().enumerate() {
        let r = find(&mut parent, e);
        if arc_of_root[r] == u32::MAX {
            arc_of_root[r] = arc_count as u32;
            arc_count += 1;
        }
        *slot = arc_of_root[r];
    }
    let arc = |label: u32| arc_of_edge[label as usize - 1];
    let mut relations = Vec::new();
    let mut twists = Vec::new();
    for c in d.crossings() {
        match c.kind {
            CrossingKind::Classical(sign) => relations.push(ArcRelation {
                z: arc(c.under_out()),
                x: arc(c.under_in()),
                y: arc(c.over_in()),
                sign,
            }),
            CrossingKind::Virtual { a_from_left } => {
                let e: i8 = if a_from_left { 1 } else { -1 };
                twists.push(TwistRelation { out: arc(c.under_out()), inp: arc(c.under_in()), exponent: e });
                twists.push(TwistRelation { out: arc(c.over_out()), inp: arc(c.over_in()), exponent: -e });
            }
        }
    }
    ArcPresentation { arc_count, arc_of_edge, relations, twists }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{builtin, parse_virtual, ParseOptions};

    #[test]
    fn trefoil_arcs() {
        let p = arcs_and_relations(&builtin("3_1").unwrap()).unwrap();
        assert_eq!(p.arc_count, 3);
        assert_eq!(p.relations.len(), 3);
        assert!(p.relations.iter().all(|r| r.sign == Sign::Negative));
    }

    #[test]
    fn unknot_has_one_arc() {
        let p = arcs_and_relations(&builtin("unknot").unwrap()).unwrap();
        assert_eq!(p.arc_count, 1);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn arc_count_matches_crossings() {
        for name in ["3_1", "4_1", "5_1", "5_2"] {
            let d = builtin(name).unwrap();
            let p = arcs_and_relations(&d).unwrap();
            assert_eq!(p.arc_count, d.crossing_count(), "{name}");
        }
        let p = arcs_and_relations(&builtin("4_1").unwrap()).unwrap();
        let mut signs: Vec<i8> = p.relations.iter().map(|r| r.sign.as_i8()).collect();
        signs.sort();
        assert_eq!(signs, vec![-1, -1, 1, 1]);
    }

    #[test]
    fn virtual_crossings_break_arcs() {
        let d = parse_virtual("X(1,4,2,5) X(3,6,4,1) V(5,2,6,3)", ParseOptions::default()).unwrap();
        assert!(matches!(arcs_and_relations(&d), Err(Error::NotClassical)));
        let p = presentation(&d);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.twists.len(), 2);
        assert_eq!(p.twists[0].exponent, -p.twists[1].exponent);
        assert_eq!(p.arc_count, 4);
    }
}
