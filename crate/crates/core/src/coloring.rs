//! Quandle colorings of diagrams, homomorphisms between finite quandles and
//! the pointwise hom quandle.

use std::collections::HashMap;

use crate::diagram::ArcPresentation;
use crate::perm::Permutation;
use crate::quandle::FiniteQuandle;
use crate::search::{ConstraintSystem, Limits};
use crate::{Error, Result};

/// A coloring: arc index (diagram source) or element index (finite source)
/// to an element of the target, all 0-based.
pub type Coloring = Vec<u32>;

/// What is being colored.
#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Diagram(&'a ArcPresentation),
    Finite(&'a FiniteQuandle),
}

impl Source<'_> {
    /// Number of variables: arcs or elements.
    pub fn size(&self) -> usize {
        match self {
            Source::Diagram(p) => p.arc_count,
            Source::Finite(q) => q.order(),
        }
    }

    /// Deterministic byte encoding of the source, for cache keys.
    pub fn content_key(&self) -> Vec<u8> {
        match self {
            Source::Diagram(p) => {
                let mut k = b"D".to_vec();
                k.extend(p.content_key());
                k
            }
            Source::Finite(q) => {
                let mut k = b"Q".to_vec();
                k.extend((q.order() as u32).to_le_bytes());
                for v in q.table() {
                    k.extend(v.to_le_bytes());
                }
                k
            }
        }
    }

    fn require_classical(&self) -> Result<()> {
        match self {
            Source::Diagram(p) if !p.is_classical() => Err(Error::NotClassical),
            _ => Ok(()),
        }
    }
}

/// Adds the defining relations of `source`, each twisted by `twist(inp)`.
///
/// Diagram: one relation per crossing. Finite: `v[x*y] = v[x] * τ(v[y])` for
/// every pair.
pub(crate) fn add_relations(sys: &mut ConstraintSystem<'_>, source: Source<'_>, twist: impl Fn(usize) -> Option<u32>) {
    match source {
        Source::Diagram(p) => {
            for r in &p.relations {
                let (out, inp, over) = r.oriented();
                sys.twisted_relation(out as usize, inp as usize, over as usize, twist(inp as usize));
            }
        }
        Source::Finite(q) => {
            for x in 0..q.order() {
                for y in 0..q.order() {
                    sys.twisted_relation(q.op(x, y), x, y, twist(x));
                }
            }
        }
    }
}

/// Adds `v[out] = β^e(v[in])` for each virtual-crossing twist of `p`.
pub(crate) fn add_twists(sys: &mut ConstraintSystem<'_>, p: &ArcPresentation, beta: &Permutation) {
    if p.twists.is_empty() {
        return;
    }
    let fwd = sys.add_perm(beta.images().to_vec());
    let back = sys.add_perm(beta.inverse().images().to_vec());
    for t in &p.twists {
        let map = if t.exponent > 0 { fwd } else { back };
        sys.mapped(t.out as usize, t.inp as usize, map);
    }
}

/// All colorings of a classical diagram by `x`, sorted lexicographically.
pub fn enumerate_homs_diagram(p: &ArcPresentation, x: &FiniteQuandle, limits: &Limits) -> Result<Vec<Coloring>> {
    enumerate_homs(Source::Diagram(p), x, limits)
}

/// All homomorphisms `q → x`, as image arrays, sorted lexicographically.
pub fn enumerate_homs_finite(q: &FiniteQuandle, x: &FiniteQuandle, limits: &Limits) -> Result<Vec<Coloring>> {
    enumerate_homs(Source::Finite(q), x, limits)
}

/// All homomorphisms from `source` into `x`.
pub fn enumerate_homs(source: Source<'_>, x: &FiniteQuandle, limits: &Limits) -> Result<Vec<Coloring>> {
    source.require_classical()?;
    let mut sys = ConstraintSystem::new(x, source.size());
    add_relations(&mut sys, source, |_| None);
    sys.solve(limits.node_budget, true)
}

/// The pointwise quandle `(f * g)(i) = f(i) * g(i)` on a sorted set of maps
/// into `a`. Fails with [`Error::ClosureViolation`] if a product leaves the set.
pub fn pointwise_quandle(maps: &[Coloring], a: &FiniteQuandle) -> Result<FiniteQuandle> {
    if maps.is_empty() {
        return Err(Error::Invalid("pointwise quandle of an empty set".into()));
    }
    let index: HashMap<&[u32], usize> = maps.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    let mut buf = vec![0u32; maps[0].len()];
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            for (k, slot) in buf.iter_mut().enumerate() {
                *slot = a.op(f[k] as usize, g[k] as usize) as u32;
            }
            let h = *index.get(buf.as_slice()).ok_or(Error::ClosureViolation { left: i + 1, right: j + 1 })?;
            table.push(h as u32);
        }
    }
    Ok(FiniteQuandle::from_table(n, table)?)
}

/// The hom quandle `Hom(source, A)` for abelian `A`, with its elements.
pub fn hom_quandle(source: Source<'_>, a: &FiniteQuandle, limits: &Limits) -> Result<(FiniteQuandle, Vec<Coloring>)> {
    if !a.is_abelian() {
        return Err(Error::NotAbelianTarget);
    }
    let homs = enumerate_homs(source, a, limits)?;
    let q = pointwise_quandle(&homs, a)?;
    Ok((q, homs))
}
