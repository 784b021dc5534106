//! Brute-force oracles and shared fixtures for the integration tests.
//!
//! The oracles never call the search engine: they enumerate assignments in
//! index order and reject a partial assignment only once some constraint has
//! all of its variables assigned.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use knotder_core::diagram::{
    arcs_and_relations, builtin, parse_gauss, parse_virtual, r1_add, r2_add, ArcPresentation, KnotDiagram,
    ParseOptions, Sign,
};
use knotder_core::quandle::{canonical_table, dihedral, disjoint_union, takasaki, trivial, validate_table, FiniteQuandle};

/// A permutation as 0-based images.
pub type Perm = Vec<u32>;

pub fn x4() -> FiniteQuandle {
    validate_table(&[vec![1, 3, 4, 2], vec![4, 2, 1, 3], vec![2, 4, 3, 1], vec![3, 1, 2, 4]]).unwrap()
}

pub fn rigid3() -> FiniteQuandle {
    validate_table(&[vec![1, 3, 1], vec![2, 2, 2], vec![3, 1, 3]]).unwrap()
}

/// Literal 15x15 and 11x11 matrices as printed: `a * b = 2b - a` on 1..n.
pub fn printed_dihedral(n: i64) -> FiniteQuandle {
    let rows: Vec<Vec<i64>> = (1..=n).map(|a| (1..=n).map(|b| (2 * b - a - 1).rem_euclid(n) + 1).collect()).collect();
    validate_table(&rows).unwrap()
}

pub fn knot(name: &str) -> ArcPresentation {
    arcs_and_relations(&builtin(name).unwrap()).unwrap()
}

/// Generic depth-first generate-and-test over `vars` variables with values
/// `0..m`; `ok(values, k)` sees the first `k` values and must reject
/// whenever a constraint among them fails.
pub fn naive_search(vars: usize, m: usize, ok: impl Fn(&[u32], usize) -> bool) -> Vec<Vec<u32>> {
    fn go(vals: &mut Vec<u32>, vars: usize, m: usize, ok: &dyn Fn(&[u32], usize) -> bool, out: &mut Vec<Vec<u32>>) {
        let k = vals.len();
        if k == vars {
            out.push(vals.clone());
            return;
        }
        for x in 0..m as u32 {
            vals.push(x);
            if ok(vals, k + 1) {
                go(vals, vars, m, ok, out);
            }
            vals.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), vars, m, &ok, &mut out);
    out
}

// ---- permutations, composed as functions on images ----

pub fn compose_then(a: &[u32], b: &[u32]) -> Perm {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn invert(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        inv[v as usize] = i as u32;
    }
    inv
}

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// All automorphisms, by testing every permutation.
pub fn brute_aut(q: &FiniteQuandle) -> Vec<Perm> {
    let n = q.order();
    (0..n as u32)
        .permutations(n)
        .filter(|g| (0..n).all(|x| (0..n).all(|y| g[q.op(x, y)] as usize == q.op(g[x] as usize, g[y] as usize))))
        .sorted()
        .collect()
}

/// `b⁻¹ a b` in the right-action product: apply `b⁻¹`, then `a`, then `b`.
pub fn conj(a: &[u32], b: &[u32]) -> Perm {
    compose_then(&compose_then(&invert(b), a), b)
}

// ---- colorings ----

/// `(out, inp, over)` triples of a presentation.
pub fn oriented(p: &ArcPresentation) -> Vec<(usize, usize, usize)> {
    p.relations
        .iter()
        .map(|r| {
            let (o, i, v) = r.oriented();
            (o as usize, i as usize, v as usize)
        })
        .collect()
}

fn assigned(k: usize, vars: &[usize]) -> bool {
    vars.iter().all(|&v| v < k)
}

pub fn brute_homs_diagram(p: &ArcPresentation, x: &FiniteQuandle) -> Vec<Vec<u32>> {
    let rels = oriented(p);
    naive_search(p.arc_count, x.order(), |v, k| {
        rels.iter().all(|&(o, i, y)| {
            !assigned(k, &[o, i, y]) || v[o] as usize == x.op(v[i] as usize, v[y] as usize)
        })
    })
}

pub fn brute_homs_finite(q: &FiniteQuandle, x: &FiniteQuandle) -> Vec<Vec<u32>> {
    let n = q.order();
    naive_search(n, x.order(), |v, k| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                let c = q.op(a, b);
                !assigned(k, &[a, b, c]) || v[c] as usize == x.op(v[a] as usize, v[b] as usize)
            })
        })
    })
}

/// Actions as lists of permutations: colorings by `Conj(Aut(X))` with the
/// group computed by brute force.
pub fn brute_actions(
    vars: usize,
    constraints: &[(usize, usize, usize)],
    x: &FiniteQuandle,
) -> Vec<Vec<Perm>> {
    let aut = brute_aut(x);
    let m = aut.len();
    let table: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).map(|b| aut.iter().position(|g| *g == conj(&aut[a], &aut[b])).unwrap()).collect())
        .collect();
    naive_search(vars, m, |v, k| {
        constraints
            .iter()
            .all(|&(o, i, y)| !assigned(k, &[o, i, y]) || v[o] as usize == table[v[i] as usize][v[y] as usize])
    })
    .into_iter()
    .map(|vals| vals.into_iter().map(|i| aut[i as usize].clone()).collect())
    .collect()
}

pub fn finite_constraints(q: &FiniteQuandle) -> Vec<(usize, usize, usize)> {
    let n = q.order();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (q.op(a, b), a, b)).collect()
}

/// Derivations on a diagram: twisted crossing relations and per-arc
/// idempotency.
pub fn brute_derivations_diagram(p: &ArcPresentation, x: &FiniteQuandle, phi: &[Perm]) -> Vec<Vec<u32>> {
    let rels = oriented(p);
    naive_search(p.arc_count, x.order(), |v, k| {
        let a = k - 1;
        let fa = v[a] as usize;
        x.op(fa, phi[a][fa] as usize) == fa
            && rels.iter().all(|&(o, i, y)| {
                !assigned(k, &[o, i, y]) || v[o] as usize == x.op(v[i] as usize, phi[i][v[y] as usize] as usize)
            })
    })
}

pub fn brute_derivations_finite(q: &FiniteQuandle, x: &FiniteQuandle, phi: &[Perm]) -> Vec<Vec<u32>> {
    let n = q.order();
    naive_search(n, x.order(), |v, k| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                let c = q.op(a, b);
                !assigned(k, &[a, b, c]) || v[c] as usize == x.op(v[a] as usize, phi[a][v[b] as usize] as usize)
            })
        })
    })
}

/// Keeps maps with `f(α(q)) = μ(f(q))`.
pub fn intertwines(f: &[u32], alpha: &[u32], mu: &[u32]) -> bool {
    (0..f.len()).all(|q| f[alpha[q] as usize] == mu[f[q] as usize])
}

pub fn brute_polynomial(p: &ArcPresentation, x: &FiniteQuandle) -> std::collections::BTreeMap<u32, u64> {
    let mut coeffs = std::collections::BTreeMap::new();
    coeffs.insert(0, brute_homs_diagram(p, x).len() as u64);
    let id = identity(x.order());
    for phi in brute_actions(p.arc_count, &oriented(p), x) {
        if phi.iter().all(|g| *g == id) {
            continue;
        }
        let k = brute_derivations_diagram(p, x, &phi).len() as u32 + 1;
        *coeffs.entry(k).or_insert(0) += 1;
    }
    coeffs
}

// ---- fixture sets ----

/// Every quandle of order `n` (labelled), from columns that are
/// permutations fixing their own index.
pub fn all_quandles(n: usize) -> Vec<FiniteQuandle> {
    let columns: Vec<Vec<Perm>> = (0..n)
        .map(|j| (0..n as u32).permutations(n).filter(|p| p[j] == j as u32).collect())
        .collect();
    columns
        .iter()
        .multi_cartesian_product()
        .filter_map(|cols| FiniteQuandle::from_fn(n, |i, j| cols[j][i] as usize).ok())
        .collect()
}

/// Quandles of order `n` up to isomorphism.
pub fn quandles_up_to_iso(n: usize) -> Vec<FiniteQuandle> {
    let classes: BTreeSet<Vec<u32>> = all_quandles(n).iter().map(|q| canonical_table(q).unwrap()).collect();
    classes.into_iter().map(|t| FiniteQuandle::from_table(n, t).unwrap()).collect()
}

/// Alexander quandle on `ℤ/p`: `x * y = t x + (1 - t) y`.
pub fn alexander(p: usize, t: usize) -> FiniteQuandle {
    FiniteQuandle::from_fn(p, |x, y| (t * x + (p + 1 - t) * y) % p).unwrap()
}

/// Targets of order at most 5: every quandle of order ≤ 4 and a selection of
/// order 5.
pub fn small_targets() -> Vec<(String, FiniteQuandle)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for (i, q) in quandles_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("q{n}.{i}"), q));
        }
    }
    out.push(("t5".into(), trivial(5)));
    out.push(("d5".into(), dihedral(5)));
    out.push(("alex5_2".into(), alexander(5, 2)));
    out.push(("alex5_3".into(), alexander(5, 3)));
    out.push(("d3+t2".into(), disjoint_union(&dihedral(3), &trivial(2))));
    out.push(("x4+t1".into(), disjoint_union(&x4(), &trivial(1))));
    out
}

pub fn abelian_targets() -> Vec<(String, FiniteQuandle)> {
    small_targets().into_iter().filter(|(_, q)| q.is_abelian()).chain([("tk3x3".to_string(), takasaki(&[3, 3]))]).collect()
}

/// Classical diagrams with at most four crossings.
pub fn small_diagrams() -> Vec<(String, KnotDiagram)> {
    let mut out = vec![
        ("unknot".to_string(), builtin("unknot").unwrap()),
        ("3_1".to_string(), builtin("3_1").unwrap()),
        ("4_1".to_string(), builtin("4_1").unwrap()),
        ("kink+".to_string(), parse_gauss("O1+ U1+").unwrap()),
        ("kink-".to_string(), parse_gauss("U1- O1-").unwrap()),
        ("gauss 3_1".to_string(), parse_gauss("O1- U2- O3- U1- O2- U3-").unwrap()),
    ];
    let u = builtin("unknot").unwrap();
    out.push(("r2 unknot".to_string(), r2_add(&u, 1, 1).unwrap()));
    let t = builtin("3_1").unwrap();
    for e in 1..=t.edge_count() {
        out.push((format!("3_1 r1+@{e}"), r1_add(&t, e, Sign::Positive).unwrap()));
    }
    out
}

pub fn virtual_trefoil() -> KnotDiagram {
    parse_virtual("X(1,4,2,5) X(3,6,4,1) V(5,2,6,3)", ParseOptions::default()).unwrap()
}

/// Virtual diagrams used for virtual fixtures.
pub fn virtual_diagrams() -> Vec<(String, KnotDiagram)> {
    vec![
        ("virtual trefoil".to_string(), virtual_trefoil()),
        ("virtual trefoil r1-@2".to_string(), r1_add(&virtual_trefoil(), 2, Sign::Negative).unwrap()),
    ]
}
