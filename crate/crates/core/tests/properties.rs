mod common;

use common::*;
use knotder_core::coloring::{enumerate_homs_diagram, hom_quandle, Source};
use knotder_core::derivations::{
    derivation_quandle, derivation_table, enumerate_actions, enumerate_derivations, transport_derivation,
    verify_derivation_closure, ActionTarget, DerivationPolynomial,
};
use knotder_core::diagram::{
    arcs_and_relations, builtin, parse_gauss, parse_pd, r1_add, r2_add, KnotDiagram, ParseOptions, Sign,
};
use knotder_core::perm::Permutation;
use knotder_core::quandle::{are_isomorphic, canonical_table, dihedral, takasaki, FiniteQuandle};
use knotder_core::virtual_knot::{
    enumerate_virtual_actions_finite, enumerate_virtual_derivations_finite, gamma_map, validate_virtual,
};
use knotder_core::Limits;
use proptest::prelude::*;
use proptest::sample::select;

fn abelian_target() -> impl Strategy<Value = FiniteQuandle> {
    prop_oneof![
        (3usize..=7).prop_map(dihedral),
        Just(x4()),
        Just(alexander(5, 2)),
        Just(alexander(7, 3)),
        Just(takasaki(&[3, 3])),
    ]
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
}

/// A builtin knot with a few random R1 and R2 insertions.
fn moved_knot() -> impl Strategy<Value = (String, KnotDiagram)> {
    let steps = prop::collection::vec((any::<bool>(), any::<u32>(), any::<u32>(), any::<bool>()), 0..3);
    (select(vec!["unknot", "3_1", "4_1", "5_2"]), steps).prop_map(|(k, steps)| {
        let mut d = builtin(k).unwrap();
        for (r2, a, b, pos) in steps {
            let e = d.edge_count();
            d = if r2 {
                r2_add(&d, a % e + 1, b % e + 1).unwrap()
            } else {
                r1_add(&d, a % e + 1, if pos { Sign::Positive } else { Sign::Negative }).unwrap()
            };
        }
        (k.to_string(), d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_survives_moves((k, d) in moved_knot(), x in abelian_target()) {
        let l = Limits::default();
        let t = ActionTarget::new(x, &l).unwrap();
        let base = derivation_table(Source::Diagram(&knot(&k)), &t, &l).unwrap();
        let moved = derivation_table(Source::Diagram(&arcs_and_relations(&d).unwrap()), &t, &l).unwrap();
        prop_assert_eq!(moved.polynomial(), base.polynomial());
        prop_assert_eq!(moved.homs.len(), base.homs.len());
    }

    #[test]
    fn pd_text_round_trips((_k, d) in moved_knot()) {
        let opts = ParseOptions { unknot_if_empty: true, assume_sign: None };
        let again = parse_pd(&d.to_pd_string(), opts).unwrap();
        prop_assert_eq!(again.writhe(), d.writhe());
        prop_assert_eq!(arcs_and_relations(&again).unwrap().arc_count, arcs_and_relations(&d).unwrap().arc_count);
        if let Some(g) = d.to_gauss_string().filter(|_| d.crossing_count() > 0) {
            let from_gauss = parse_gauss(&g).unwrap();
            prop_assert_eq!(from_gauss.writhe(), d.writhe());
        }
    }

    #[test]
    fn relabelled_quandles_are_isomorphic(x in abelian_target(), seed in any::<u64>()) {
        let n = x.order();
        let mut g: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            g.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = x.relabel(&g);
        let iso = are_isomorphic(&x, &y).expect("relabelling is an isomorphism");
        prop_assert!(x.is_homomorphism_to(&y, &iso));
        if n <= 8 {
            prop_assert_eq!(canonical_table(&x), canonical_table(&y));
        }
        prop_assert_eq!(x.check_properties(), y.check_properties());
    }

    #[test]
    fn cycle_notation_round_trips(p in (1usize..12).prop_flat_map(permutation)) {
        let p = Permutation::from_images(p).unwrap();
        prop_assert_eq!(Permutation::from_cycles(&p.to_string(), p.degree()).unwrap(), p.clone());
        prop_assert_eq!(p.then(&p.inverse()), Permutation::identity(p.degree()));
    }

    #[test]
    fn polynomial_text_round_trips(coeffs in prop::collection::btree_map(0u32..12, 1u64..500, 0..6)) {
        let p = DerivationPolynomial::from_coeffs(coeffs);
        prop_assert_eq!(p.to_string().parse::<DerivationPolynomial>().unwrap(), p);
    }

    #[test]
    fn derivation_quandles_are_abelian_quandles((_k, d) in moved_knot(), x in abelian_target()) {
        let l = Limits::default();
        let t = ActionTarget::new(x.clone(), &l).unwrap();
        let p = arcs_and_relations(&d).unwrap();
        let src = Source::Diagram(&p);
        for a in enumerate_actions(src, &t, &l).unwrap().iter().take(40) {
            let ders = enumerate_derivations(src, &t, a, &l).unwrap();
            if ders.is_empty() {
                continue;
            }
            let q = derivation_quandle(&ders, &x).unwrap();
            prop_assert!(q.is_abelian());
            let phi = a.permutations(&t);
            for f in ders.iter().take(4) {
                let r = verify_derivation_closure(&p, &x, &phi, f, 2);
                prop_assert!(r.is_consistent(), "{}", r);
            }
        }
    }

    #[test]
    fn hom_counts_are_relabelling_invariant((_k, d) in moved_knot(), x in abelian_target()) {
        let l = Limits::default();
        let p = arcs_and_relations(&d).unwrap();
        let n = x.order();
        let rev: Vec<u32> = (0..n as u32).rev().collect();
        let y = x.relabel(&rev);
        prop_assert_eq!(
            enumerate_homs_diagram(&p, &x, &l).unwrap().len(),
            enumerate_homs_diagram(&p, &y, &l).unwrap().len()
        );
        let (hq, _) = hom_quandle(Source::Diagram(&p), &x, &l).unwrap();
        prop_assert!(hq.is_abelian());
    }
}

/// Transport along an automorphism pair that is action compatible by
/// construction: `σ = id`, `τ ∈ Aut(X)` and `φ₂ = τ φ₁ τ⁻¹`.
#[test]
fn transport_along_automorphisms() {
    let l = Limits::default();
    for q in [dihedral(3), x4(), rigid3()] {
        for x in [dihedral(3), dihedral(5), x4()] {
            let t = ActionTarget::new(x.clone(), &l).unwrap();
            let id: Vec<u32> = (0..q.order() as u32).collect();
            for a in enumerate_actions(Source::Finite(&q), &t, &l).unwrap() {
                let phi1 = a.permutations(&t);
                let ders = enumerate_derivations(Source::Finite(&q), &t, &a, &l).unwrap();
                for tau in t.aut().elements() {
                    let phi2: Vec<Permutation> = phi1.iter().map(|g| tau.inverse().then(g).then(tau)).collect();
                    for f in &ders {
                        let g = transport_derivation(f, &id, tau.images(), &phi1, &phi2, &q, &x, &x).unwrap();
                        assert_eq!(g.len(), q.order());
                    }
                }
            }
        }
    }
}

/// Γ is a well-defined automorphism of every virtual derivation quandle.
#[test]
fn gamma_is_an_automorphism() {
    let l = Limits::default();
    for q in [dihedral(3), dihedral(5), x4()] {
        let alphas = knotder_core::autgroup::automorphism_group(&q, &l).unwrap();
        for x in [dihedral(3), dihedral(5)] {
            let t = ActionTarget::new(x.clone(), &l).unwrap();
            for beta in t.aut().elements().iter().step_by(2) {
                for alpha in alphas.elements().iter().step_by(3) {
                    let qa = validate_virtual(q.clone(), alpha.clone()).unwrap();
                    for a in enumerate_virtual_actions_finite(&qa, &t, beta, &l).unwrap() {
                        let ders = enumerate_virtual_derivations_finite(&qa, &t, beta, &a, &l).unwrap();
                        if ders.is_empty() {
                            continue;
                        }
                        let dq = derivation_quandle(&ders, &x).unwrap();
                        let gamma = gamma_map(&ders, &x, alpha, beta).unwrap();
                        for i in 0..dq.order() {
                            for j in 0..dq.order() {
                                assert_eq!(gamma.apply(dq.op(i, j)), dq.op(gamma.apply(i), gamma.apply(j)));
                            }
                        }
                    }
                }
            }
        }
    }
}
