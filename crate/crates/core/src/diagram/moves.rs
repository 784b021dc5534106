//! Reidemeister insertions (R1, R2 and the virtual VR2) used for invariance
//! testing. Each insertion returns a new diagram with sequential edge labels.

use super::{CrossingKind, KnotDiagram, Role, Sign, Visit};
use crate::{Error, Result};

fn locate(d: &KnotDiagram, edge: u32) -> Result<(usize, usize)> {
    d.locate_edge(edge).ok_or(Error::InvalidEdge { edge })
}

/// Splices `visits` into component `k` before the visit at `pos`.
fn splice(components: &mut [Vec<Visit>], k: usize, pos: usize, visits: &[Visit]) {
    let comp = &mut components[k];
    let tail = comp.split_off(pos);
    comp.extend_from_slice(visits);
    comp.extend(tail);
}

/// Inserts two sequences at edges `e1` and `e2` (or their concatenation when
/// the edges coincide).
fn insert_pair(
    d: &KnotDiagram,
    new_kinds: [CrossingKind; 2],
    e1: u32,
    first: [Role; 2],
    e2: u32,
    second: [Role; 2],
) -> Result<KnotDiagram> {
    let (k1, p1) = locate(d, e1)?;
    let (k2, p2) = locate(d, e2)?;
    let mut kinds = d.kinds().to_vec();
    let c1 = kinds.len() as u32;
    let c2 = c1 + 1;
    kinds.extend(new_kinds);
    let mut components = d.components().to_vec();
    let s1 = [Visit { crossing: c1, role: first[0] }, Visit { crossing: c2, role: first[1] }];
    if (k1, p1) == (k2, p2) {
        // the strand doubles back: the second pass meets c2 first
        let s2 = [Visit { crossing: c2, role: second[1] }, Visit { crossing: c1, role: second[0] }];
        let mut all = s1.to_vec();
        all.extend(s2);
        splice(&mut components, k1, p1, &all);
    } else {
        let s2 = [Visit { crossing: c1, role: second[0] }, Visit { crossing: c2, role: second[1] }];
        if k1 == k2 && p1 > p2 {
            splice(&mut components, k1, p1, &s1);
            splice(&mut components, k2, p2, &s2);
        } else {
            splice(&mut components, k2, p2, &s2);
            splice(&mut components, k1, p1, &s1);
        }
    }
    Ok(KnotDiagram::from_parts(kinds, components))
}

/// Adds a kink of sign `sign` on `edge`; the strand passes over, then under.
pub fn r1_add(d: &KnotDiagram, edge: u32, sign: Sign) -> Result<KnotDiagram> {
    let (k, p) = locate(d, edge)?;
    let mut kinds = d.kinds().to_vec();
    let c = kinds.len() as u32;
    kinds.push(CrossingKind::Classical(sign));
    let mut components = d.components().to_vec();
    splice(
        &mut components,
        k,
        p,
        &[Visit { crossing: c, role: Role::Over }, Visit { crossing: c, role: Role::Under }],
    );
    Ok(KnotDiagram::from_parts(kinds, components))
}

/// Pushes the strand through `over_edge` across the strand through
/// `under_edge`, creating a positive and a negative crossing. When the two
/// edges coincide the strand folds back over itself.
pub fn r2_add(d: &KnotDiagram, over_edge: u32, under_edge: u32) -> Result<KnotDiagram> {
    insert_pair(
        d,
        [CrossingKind::Classical(Sign::Positive), CrossingKind::Classical(Sign::Negative)],
        over_edge,
        [Role::Over, Role::Over],
        under_edge,
        [Role::Under, Role::Under],
    )
}

/// Virtual R2: two virtual crossings between the strands through `e1` and
/// `e2`, with opposite handedness so their twists cancel.
pub fn vr2_add(d: &KnotDiagram, e1: u32, e2: u32) -> Result<KnotDiagram> {
    insert_pair(
        d,
        [CrossingKind::Virtual { a_from_left: false }, CrossingKind::Virtual { a_from_left: true }],
        e1,
        [Role::Under, Role::Under],
        e2,
        [Role::Over, Role::Over],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{arcs::presentation, builtin, parse_virtual, ParseOptions};

    #[test]
    fn r1_adds_one_crossing() {
        let d = builtin("3_1").unwrap();
        for e in 1..=d.edge_count() {
            for s in [Sign::Positive, Sign::Negative] {
                let d1 = r1_add(&d, e, s).unwrap();
                assert_eq!(d1.crossing_count(), 4);
                assert_eq!(d1.edge_count(), 8);
                assert_eq!(d1.writhe(), d.writhe() + s.as_i8() as i64);
                assert_eq!(presentation(&d1).arc_count, 4);
            }
        }
        assert!(matches!(r1_add(&d, 7, Sign::Positive), Err(Error::InvalidEdge { edge: 7 })));
        assert!(r1_add(&d, 0, Sign::Positive).is_err());
    }

    #[test]
    fn r2_adds_two_crossings() {
        let d = builtin("4_1").unwrap();
        for e1 in 1..=8 {
            for e2 in 1..=8 {
                let d2 = r2_add(&d, e1, e2).unwrap();
                assert_eq!(d2.crossing_count(), 6);
                assert_eq!(d2.writhe(), 0);
                let pd = d2.to_pd_string();
                let again = crate::diagram::parse_pd(&pd, ParseOptions::default()).unwrap();
                assert_eq!(again.to_pd_string(), pd);
            }
        }
    }

    #[test]
    fn r2_on_unknot() {
        let d = r2_add(&KnotDiagram::unknot(), 1, 1).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.edge_count(), 4);
    }

    #[test]
    fn vr2_adds_cancelling_twists() {
        let d = parse_virtual("X(1,4,2,5) X(3,6,4,1) V(5,2,6,3)", ParseOptions::default()).unwrap();
        let d2 = vr2_add(&d, 1, 4).unwrap();
        assert_eq!(d2.crossing_count(), 5);
        assert_eq!(d2.classical_crossing_count(), 2);
        let p = presentation(&d2);
        assert_eq!(p.twists.iter().map(|t| t.exponent as i32).sum::<i32>(), 0);
        let reparsed = parse_virtual(&d2.to_pd_string(), ParseOptions::default()).unwrap();
        assert_eq!(reparsed, d2);
    }
}
