//! Virtual quandles `(Q, α)`, virtual actions and derivations, and their
//! diagram versions for virtual knots.
//!
//! A virtual homomorphism `(Q, α) → (X, β)` is a homomorphism `f` with
//! `β ∘ f = f ∘ α`. A virtual action satisfies `φ(α(q)) = β̂(φ(q))` where
//! `β̂(g) = β⁻¹ g β` in `Conj(Aut(X))`; a virtual derivation is a derivation
//! intertwining `α` and `β`.
//!
//! On diagrams, each strand passing a virtual crossing picks up `β` or `β⁻¹`
//! (the strand crossing from the left gets `β`); actions pick up `β̂^{±1}`.

use crate::autgroup::check_automorphism;
use crate::coloring::{add_relations, add_twists, Coloring, Source};
use crate::derivations::{derivation_system, mark_actions, Action, ActionTarget, DerivationPolynomial, DerivationTable};
use crate::diagram::{presentation, ArcPresentation, KnotDiagram};
use crate::perm::Permutation;
use crate::quandle::FiniteQuandle;
use crate::search::{ConstraintSystem, Limits};
use crate::{Error, Result};

/// A quandle with a distinguished automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualQuandle {
    pub quandle: FiniteQuandle,
    pub alpha: Permutation,
}

/// Checks `alpha ∈ Aut(q)`; the error carries a 1-based witness pair.
pub fn validate_virtual(q: FiniteQuandle, alpha: Permutation) -> Result<VirtualQuandle> {
    if alpha.degree() != q.order() {
        return Err(Error::DegreeMismatch { expected: q.order(), found: alpha.degree() });
    }
    check_automorphism(&q, &alpha).map_err(|(x, y)| Error::NotAnAutomorphism { x: x + 1, y: y + 1 })?;
    Ok(VirtualQuandle { quandle: q, alpha })
}

/// The presentation of a virtual diagram: arcs break at under-crossings and
/// at virtual crossings, which contribute twist relations.
pub fn virtual_arcs_and_relations(d: &KnotDiagram) -> ArcPresentation {
    presentation(d)
}

/// `β̂ : g ↦ β⁻¹ g β` on the indices of `Aut(X)`, as an image array.
fn hat(target: &ActionTarget, beta: &Permutation) -> Result<Vec<u32>> {
    let b = target
        .aut()
        .index_of(beta)
        .ok_or_else(|| Error::Invalid("β is not an automorphism of the target".into()))?;
    let conj = target.conj();
    Ok((0..conj.order()).map(|g| conj.op(g, b) as u32).collect())
}

/// `v[α(q)] = μ(v[q])` for every element `q`.
fn add_intertwining(sys: &mut ConstraintSystem<'_>, alpha: &Permutation, mu: Vec<u32>) {
    if alpha.is_identity() && mu.iter().enumerate().all(|(i, &v)| i as u32 == v) {
        return;
    }
    let m = sys.add_perm(mu);
    for q in 0..alpha.degree() {
        sys.mapped(alpha.apply(q), q, m);
    }
}

/// Adds `φ(out) = β̂^e(φ(in))` for each twist of `p`.
fn add_action_twists(sys: &mut ConstraintSystem<'_>, p: &ArcPresentation, hat_beta: &[u32]) {
    if p.twists.is_empty() {
        return;
    }
    let beta_hat = Permutation::from_images(hat_beta.to_vec()).expect("β̂ is a bijection");
    add_twists(sys, p, &beta_hat);
}

pub fn enumerate_virtual_homs_finite(qa: &VirtualQuandle, xb: &VirtualQuandle, limits: &Limits) -> Result<Vec<Coloring>> {
    let mut sys = ConstraintSystem::new(&xb.quandle, qa.quandle.order());
    add_relations(&mut sys, Source::Finite(&qa.quandle), |_| None);
    add_intertwining(&mut sys, &qa.alpha, xb.alpha.images().to_vec());
    sys.solve(limits.node_budget, true)
}

/// Virtual actions of `qa` on the target quandle with automorphism `beta`.
pub fn enumerate_virtual_actions_finite(
    qa: &VirtualQuandle,
    target: &ActionTarget,
    beta: &Permutation,
    limits: &Limits,
) -> Result<Vec<Action>> {
    let mut sys = ConstraintSystem::new(target.conj(), qa.quandle.order());
    add_relations(&mut sys, Source::Finite(&qa.quandle), |_| None);
    add_intertwining(&mut sys, &qa.alpha, hat(target, beta)?);
    Ok(mark_actions(sys.solve(limits.node_budget, true)?, target.identity_index()))
}

pub fn enumerate_virtual_derivations_finite(
    qa: &VirtualQuandle,
    target: &ActionTarget,
    beta: &Permutation,
    action: &Action,
    limits: &Limits,
) -> Result<Vec<Coloring>> {
    let mut sys = derivation_system(Source::Finite(&qa.quandle), target, &action.values);
    add_intertwining(&mut sys, &qa.alpha, beta.images().to_vec());
    sys.solve(limits.node_budget, true)
}

/// `Γ(f) = β⁻¹ ∘ f ∘ α⁻¹` on a set of maps `Q → X`, as a permutation of the
/// set's indices. For abelian `X` it is also checked to be an automorphism of
/// the derivation quandle.
pub fn gamma_map(derivs: &[Coloring], x: &FiniteQuandle, alpha: &Permutation, beta: &Permutation) -> Result<Permutation> {
    let (ai, bi) = (alpha.inverse(), beta.inverse());
    let images = derivs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let g: Coloring = (0..f.len()).map(|q| bi.apply(f[ai.apply(q)] as usize) as u32).collect();
            derivs.binary_search(&g).map(|j| j as u32).map_err(|_| Error::ImageEscape { index: i + 1 })
        })
        .collect::<Result<Vec<u32>>>()?;
    let gamma = Permutation::from_images(images)?;
    if x.is_abelian() {
        let dq = crate::coloring::pointwise_quandle(derivs, x)?;
        check_automorphism(&dq, &gamma).map_err(|(x, y)| Error::NotAnAutomorphism { x: x + 1, y: y + 1 })?;
    }
    Ok(gamma)
}

pub fn enumerate_virtual_homs_diagram(p: &ArcPresentation, xb: &VirtualQuandle, limits: &Limits) -> Result<Vec<Coloring>> {
    let mut sys = ConstraintSystem::new(&xb.quandle, p.arc_count);
    add_relations(&mut sys, Source::Diagram(p), |_| None);
    add_twists(&mut sys, p, &xb.alpha);
    sys.solve(limits.node_budget, true)
}

pub fn enumerate_virtual_actions_diagram(
    p: &ArcPresentation,
    target: &ActionTarget,
    beta: &Permutation,
    limits: &Limits,
) -> Result<Vec<Action>> {
    let mut sys = ConstraintSystem::new(target.conj(), p.arc_count);
    add_relations(&mut sys, Source::Diagram(p), |_| None);
    add_action_twists(&mut sys, p, &hat(target, beta)?);
    Ok(mark_actions(sys.solve(limits.node_budget, true)?, target.identity_index()))
}

fn virtual_derivation_system<'a>(
    p: &ArcPresentation,
    target: &'a ActionTarget,
    beta: &Permutation,
    action: &Action,
) -> ConstraintSystem<'a> {
    let mut sys = derivation_system(Source::Diagram(p), target, &action.values);
    add_twists(&mut sys, p, beta);
    sys
}

pub fn enumerate_virtual_derivations_diagram(
    p: &ArcPresentation,
    target: &ActionTarget,
    beta: &Permutation,
    action: &Action,
    limits: &Limits,
) -> Result<Vec<Coloring>> {
    virtual_derivation_system(p, target, beta, action).solve(limits.node_budget, true)
}

/// Homs, virtual actions and virtual derivation sets of a virtual diagram over
/// `(X, β)`.
pub fn virtual_derivation_table(
    p: &ArcPresentation,
    target: &ActionTarget,
    beta: &Permutation,
    limits: &Limits,
) -> Result<DerivationTable> {
    let xb = validate_virtual(target.quandle().clone(), beta.clone())?;
    let homs = enumerate_virtual_homs_diagram(p, &xb, limits)?;
    let actions = enumerate_virtual_actions_diagram(p, target, beta, limits)?;
    DerivationTable::compute(homs, actions, |a| {
        virtual_derivation_system(p, target, beta, a).solve(limits.node_budget, false)
    })
}

pub fn virtual_derivation_polynomial(
    p: &ArcPresentation,
    target: &ActionTarget,
    beta: &Permutation,
    limits: &Limits,
) -> Result<DerivationPolynomial> {
    Ok(virtual_derivation_table(p, target, beta, limits)?.polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::{automorphism_group, conj_quandle};
    use crate::coloring::enumerate_homs_finite;
    use crate::derivations::enumerate_actions;
    use crate::diagram::{parse_virtual, vr2_add, ParseOptions};
    use crate::quandle::{dihedral, validate_table};

    fn shift(n: usize) -> Permutation {
        Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap()
    }

    fn vtrefoil() -> KnotDiagram {
        parse_virtual("X(1,4,2,5) X(3,6,4,1) V(5,2,6,3)", ParseOptions::default()).unwrap()
    }

    #[test]
    fn validation() {
        validate_virtual(dihedral(3), shift(3)).unwrap();
        validate_virtual(dihedral(4), Permutation::identity(4)).unwrap();
        let q = validate_table(&[vec![1, 3, 1], vec![2, 2, 2], vec![3, 1, 3]]).unwrap();
        let c = Permutation::from_cycles("(1,2,3)", 3).unwrap();
        assert!(matches!(validate_virtual(q, c), Err(Error::NotAnAutomorphism { .. })));
    }

    #[test]
    fn finite_virtual_homs() {
        let l = Limits::default();
        let s = validate_virtual(dihedral(3), shift(3)).unwrap();
        let id = validate_virtual(dihedral(3), Permutation::identity(3)).unwrap();
        let homs = enumerate_virtual_homs_finite(&s, &s, &l).unwrap();
        assert_eq!(homs, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(enumerate_virtual_homs_finite(&s, &id, &l).unwrap(), vec![vec![0; 3], vec![1; 3], vec![2; 3]]);
        assert_eq!(
            enumerate_virtual_homs_finite(&id, &id, &l).unwrap(),
            enumerate_homs_finite(&dihedral(3), &dihedral(3), &l).unwrap()
        );
    }

    #[test]
    fn identity_reduces_to_classical_actions() {
        let l = Limits::default();
        let q = dihedral(3);
        let t = ActionTarget::new(dihedral(3), &l).unwrap();
        let qa = validate_virtual(q.clone(), Permutation::identity(3)).unwrap();
        assert_eq!(
            enumerate_virtual_actions_finite(&qa, &t, &Permutation::identity(3), &l).unwrap(),
            enumerate_actions(Source::Finite(&q), &t, &l).unwrap()
        );
    }

    #[test]
    fn involutive_alpha_gives_inner_action() {
        // α² = id: q ↦ S_q is a virtual action of (Q, α) on itself with β = α
        let l = Limits::default();
        let q = dihedral(5);
        let alpha = Permutation::from_images(vec![0, 4, 3, 2, 1]).unwrap();
        let qa = validate_virtual(q.clone(), alpha.clone()).unwrap();
        let t = ActionTarget::new(q.clone(), &l).unwrap();
        let inner: Vec<u32> = (0..5)
            .map(|x| t.aut().index_of(&Permutation::from_images(q.right_translation(x)).unwrap()).unwrap() as u32)
            .collect();
        let actions = enumerate_virtual_actions_finite(&qa, &t, &alpha, &l).unwrap();
        assert!(actions.iter().any(|a| a.values == inner));
    }

    #[test]
    fn gamma_is_an_automorphism() {
        let l = Limits::default();
        let q = dihedral(5);
        let alpha = Permutation::from_images(vec![0, 4, 3, 2, 1]).unwrap();
        let qa = validate_virtual(q.clone(), alpha.clone()).unwrap();
        let t = ActionTarget::new(q.clone(), &l).unwrap();
        for a in enumerate_virtual_actions_finite(&qa, &t, &alpha, &l).unwrap() {
            let ders = enumerate_virtual_derivations_finite(&qa, &t, &alpha, &a, &l).unwrap();
            if !ders.is_empty() {
                let g = gamma_map(&ders, &q, &alpha, &alpha).unwrap();
                assert!(2 % g.order() == 0);
            }
        }
    }

    #[test]
    fn virtual_trefoil_colorings() {
        let l = Limits::default();
        let p = virtual_arcs_and_relations(&vtrefoil());
        let d3 = validate_virtual(dihedral(3), Permutation::identity(3)).unwrap();
        assert_eq!(enumerate_virtual_homs_diagram(&p, &d3, &l).unwrap().len(), 3);
    }

    #[test]
    fn vr2_invariance() {
        let l = Limits::default();
        let d = vtrefoil();
        let t = ActionTarget::new(dihedral(3), &l).unwrap();
        let beta = shift(3);
        let base = virtual_derivation_polynomial(&virtual_arcs_and_relations(&d), &t, &beta, &l).unwrap();
        for e1 in 1..=d.edge_count() {
            for e2 in 1..=d.edge_count() {
                let d2 = vr2_add(&d, e1, e2).unwrap();
                let p2 = virtual_derivation_polynomial(&virtual_arcs_and_relations(&d2), &t, &beta, &l).unwrap();
                assert_eq!(p2, base, "vr2 at ({e1},{e2})");
            }
        }
        let conj = conj_quandle(&automorphism_group(&dihedral(3), &l).unwrap());
        assert_eq!(conj.order(), 6);
    }
}
