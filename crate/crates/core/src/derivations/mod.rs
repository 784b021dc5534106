//! Quandle actions, derivations and the structures built from them: derivation
//! quandles, the total derivation quandle, the derivation multiset and the
//! derivation polynomial.
//!
//! An action of a source on `X` is a coloring by `Conj(Aut(X))`; a derivation
//! with respect to an action `φ` satisfies `f(q₁ * q₂) = f(q₁) * φ(q₁)(f(q₂))`.
//! On diagrams this becomes one twisted relation per crossing plus the
//! per-arc idempotency condition `f(a) * φ(a)(f(a)) = f(a)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::autgroup::{automorphism_group, conj_quandle, PermutationGroup};
use crate::coloring::{add_relations, enumerate_homs, pointwise_quandle, Coloring, Source};
use crate::diagram::ArcPresentation;
use crate::par;
use crate::perm::Permutation;
use crate::quandle::{disjoint_union_all, FiniteQuandle};
use crate::search::{ConstraintSystem, Limits};
use crate::{Error, Result};

mod closure;
mod multiset;
mod poly;

pub use closure::{verify_derivation_closure, ClosureReport, ClosureWitness};
pub use multiset::{derivation_multiset, DerivationMultiset, MultisetMember};
pub use poly::{DerivationPolynomial, ParsePolynomialError};

/// A finite quandle `X` with `Aut(X)` and `Conj(Aut(X))`, the codomain of
/// actions. Action values index `aut().elements()`.
#[derive(Debug, Clone)]
pub struct ActionTarget {
    x: FiniteQuandle,
    aut: PermutationGroup,
    conj: FiniteQuandle,
    identity: u32,
}

impl ActionTarget {
    pub fn new(x: FiniteQuandle, limits: &Limits) -> Result<Self> {
        let aut = automorphism_group(&x, limits)?;
        Ok(Self::with_group(x, aut))
    }

    /// Uses a precomputed automorphism group (e.g. from a cache).
    pub fn with_group(x: FiniteQuandle, aut: PermutationGroup) -> Self {
        let conj = conj_quandle(&aut);
        let identity = aut.identity_index() as u32;
        ActionTarget { x, aut, conj, identity }
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.x
    }

    pub fn aut(&self) -> &PermutationGroup {
        &self.aut
    }

    pub fn conj(&self) -> &FiniteQuandle {
        &self.conj
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    pub fn automorphism(&self, i: u32) -> &Permutation {
        self.aut.element(i as usize)
    }
}

/// An action: one automorphism index per arc or element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    pub values: Vec<u32>,
    pub trivial: bool,
}

impl Action {
    pub fn permutations(&self, target: &ActionTarget) -> Vec<Permutation> {
        self.values.iter().map(|&i| target.automorphism(i).clone()).collect()
    }
}

pub(crate) fn mark_actions(colorings: Vec<Coloring>, identity: u32) -> Vec<Action> {
    colorings
        .into_iter()
        .map(|values| {
            let trivial = values.iter().all(|&v| v == identity);
            Action { values, trivial }
        })
        .collect()
}

/// All actions of `source` on the target, sorted lexicographically.
pub fn enumerate_actions(source: Source<'_>, target: &ActionTarget, limits: &Limits) -> Result<Vec<Action>> {
    let colorings = enumerate_homs(source, target.conj(), limits)?;
    let actions = mark_actions(colorings, target.identity);
    debug_assert!(actions.iter().all(|a| action_is_compatible(source, target, a)));
    Ok(actions)
}

/// `(x^{φ(q₂)})^{φ(q₁*q₂)} = (x^{φ(q₁)})^{φ(q₂)}` on every relation or pair.
fn action_is_compatible(source: Source<'_>, target: &ActionTarget, action: &Action) -> bool {
    let phi = action.permutations(target);
    let holds = |out: usize, inp: usize, over: usize| phi[over].then(&phi[out]) == phi[inp].then(&phi[over]);
    match source {
        Source::Diagram(p) => p.relations.iter().all(|r| {
            let (o, i, v) = r.oriented();
            holds(o as usize, i as usize, v as usize)
        }),
        Source::Finite(q) => (0..q.order()).all(|x| (0..q.order()).all(|y| holds(q.op(x, y), x, y))),
    }
}

/// The constraint system for derivations with respect to `values`: twisted
/// relations plus the idempotency domain of every variable.
pub(crate) fn derivation_system<'a>(
    source: Source<'_>,
    target: &'a ActionTarget,
    values: &[u32],
) -> ConstraintSystem<'a> {
    let x = target.quandle();
    let mut sys = ConstraintSystem::new(x, source.size());
    let mut handles: HashMap<u32, u32> = HashMap::new();
    let mut handle_of = |sys: &mut ConstraintSystem<'a>, g: u32| -> Option<u32> {
        if g == target.identity {
            return None;
        }
        Some(*handles.entry(g).or_insert_with(|| sys.add_perm(target.automorphism(g).images().to_vec())))
    };
    let twists: Vec<Option<u32>> = values.iter().map(|&g| handle_of(&mut sys, g)).collect();
    add_relations(&mut sys, source, |inp| twists[inp]);
    for (var, &g) in values.iter().enumerate() {
        let alpha = target.automorphism(g);
        if !alpha.is_identity() {
            sys.restrict(var, |v| x.op(v, alpha.apply(v)) == v);
        }
    }
    sys
}

/// `Der_φ(source, X)`, sorted lexicographically.
pub fn enumerate_derivations(
    source: Source<'_>,
    target: &ActionTarget,
    action: &Action,
    limits: &Limits,
) -> Result<Vec<Coloring>> {
    derivation_system(source, target, &action.values).solve(limits.node_budget, true)
}

pub fn enumerate_derivations_diagram(
    p: &ArcPresentation,
    target: &ActionTarget,
    action: &Action,
    limits: &Limits,
) -> Result<Vec<Coloring>> {
    if !p.is_classical() {
        return Err(Error::NotClassical);
    }
    enumerate_derivations(Source::Diagram(p), target, action, limits)
}

pub fn enumerate_derivations_finite(
    q: &FiniteQuandle,
    target: &ActionTarget,
    action: &Action,
    limits: &Limits,
) -> Result<Vec<Coloring>> {
    enumerate_derivations(Source::Finite(q), target, action, limits)
}

/// Whether `f` satisfies the derivation condition on every pair of `q` for
/// the action `phi` (one automorphism per element).
pub fn is_derivation_finite(q: &FiniteQuandle, x: &FiniteQuandle, phi: &[Permutation], f: &[u32]) -> bool {
    (0..q.order()).all(|a| {
        (0..q.order()).all(|b| f[q.op(a, b)] as usize == x.op(f[a] as usize, phi[a].apply(f[b] as usize)))
    })
}

/// The derivation quandle on `derivs` under the pointwise operation of the
/// abelian quandle `x`.
pub fn derivation_quandle(derivs: &[Coloring], x: &FiniteQuandle) -> Result<FiniteQuandle> {
    if !x.is_abelian() {
        return Err(Error::NotAbelianTarget);
    }
    pointwise_quandle(derivs, x)
}

/// Homs, actions and every derivation set of a source over a target.
#[derive(Debug, Clone)]
pub struct DerivationTable {
    pub homs: Vec<Coloring>,
    pub actions: Vec<Action>,
    /// Derivations per action, in action order; the trivial action carries
    /// the homs.
    pub derivations: Vec<Vec<Coloring>>,
}

impl DerivationTable {
    /// Builds the table from a hom list and an action list.
    pub fn compute(
        homs: Vec<Coloring>,
        actions: Vec<Action>,
        derive: impl Fn(&Action) -> Result<Vec<Coloring>> + Sync + Send,
    ) -> Result<Self> {
        let derivations = par::try_map(&actions, |a| if a.trivial { Ok(homs.clone()) } else { derive(a) })?;
        Ok(DerivationTable { homs, actions, derivations })
    }

    pub fn polynomial(&self) -> DerivationPolynomial {
        let mut p = DerivationPolynomial::default();
        p.add(0, self.homs.len() as u64);
        for (a, ders) in self.actions.iter().zip(&self.derivations) {
            if !a.trivial {
                p.add(ders.len() as u32 + 1, 1);
            }
        }
        p
    }

    /// Indices of nontrivial actions with a nonempty derivation set.
    pub fn nonempty_nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.actions.len()).filter(|&i| !self.actions[i].trivial && !self.derivations[i].is_empty())
    }
}

/// Computes the full derivation table of `source` over `target`.
pub fn derivation_table(source: Source<'_>, target: &ActionTarget, limits: &Limits) -> Result<DerivationTable> {
    let homs = enumerate_homs(source, target.quandle(), limits)?;
    let actions = enumerate_actions(source, target, limits)?;
    DerivationTable::compute(homs, actions, |a| {
        derivation_system(source, target, &a.values).solve(limits.node_budget, false)
    })
}

/// `|Hom| + Σ_{φ nontrivial} u^{|Der_φ| + 1}`.
pub fn derivation_polynomial(source: Source<'_>, target: &ActionTarget, limits: &Limits) -> Result<DerivationPolynomial> {
    Ok(derivation_table(source, target, limits)?.polynomial())
}

/// Block of the total derivation quandle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockLabel {
    Hom,
    /// Index into the action list.
    Action(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub label: BlockLabel,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone)]
pub struct TotalDerivationQuandle {
    pub quandle: FiniteQuandle,
    pub blocks: Vec<Block>,
}

/// Disjoint union of the hom quandle and every nonempty derivation quandle
/// of a nontrivial action, in action order.
pub fn total_derivation_quandle(table: &DerivationTable, x: &FiniteQuandle) -> Result<TotalDerivationQuandle> {
    if !x.is_abelian() {
        return Err(Error::NotAbelianTarget);
    }
    let mut parts = vec![pointwise_quandle(&table.homs, x)?];
    let mut blocks = vec![Block { label: BlockLabel::Hom, start: 0, len: table.homs.len() }];
    let mut start = table.homs.len();
    for i in table.nonempty_nontrivial() {
        let ders = &table.derivations[i];
        parts.push(pointwise_quandle(ders, x)?);
        blocks.push(Block { label: BlockLabel::Action(i), start, len: ders.len() });
        start += ders.len();
    }
    let refs: Vec<&FiniteQuandle> = parts.iter().collect();
    Ok(TotalDerivationQuandle { quandle: disjoint_union_all(&refs), blocks })
}

/// Moves a derivation along `σ: Q₂ → Q₁` and `τ: A₁ → A₂`: `τ ∘ f ∘ σ`.
///
/// `(σ, τ)` must be action compatible:
/// `τ(φ₁(σ(q))(a)) = φ₂(q)(τ(a))` for all `q ∈ Q₂`, `a ∈ A₁`.
#[allow(clippy::too_many_arguments)]
pub fn transport_derivation(
    f: &[u32],
    sigma: &[u32],
    tau: &[u32],
    phi1: &[Permutation],
    phi2: &[Permutation],
    q2: &FiniteQuandle,
    a1: &FiniteQuandle,
    a2: &FiniteQuandle,
) -> Result<Coloring> {
    for q in 0..q2.order() {
        let s = sigma[q] as usize;
        for a in 0..a1.order() {
            if tau[phi1[s].apply(a)] as usize != phi2[q].apply(tau[a] as usize) {
                return Err(Error::CompatibilityViolation { q: q + 1, a: a + 1 });
            }
        }
    }
    let g: Coloring = (0..q2.order()).map(|q| tau[f[sigma[q] as usize] as usize]).collect();
    if !is_derivation_finite(q2, a2, phi2, &g) {
        return Err(Error::Invalid("transported map is not a derivation".into()));
    }
    Ok(g)
}

/// Memoizes action lists by source and target content.
#[derive(Debug, Default)]
pub struct ActionCache {
    map: Mutex<HashMap<Vec<u8>, Arc<Vec<Action>>>>,
}

impl ActionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn actions(&self, source: Source<'_>, target: &ActionTarget, limits: &Limits) -> Result<Arc<Vec<Action>>> {
        let mut key = source.content_key();
        for v in target.quandle().table() {
            key.extend(v.to_le_bytes());
        }
        if let Some(hit) = self.map.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let actions = Arc::new(enumerate_actions(source, target, limits)?);
        self.map.lock().unwrap().insert(key, actions.clone());
        Ok(actions)
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
