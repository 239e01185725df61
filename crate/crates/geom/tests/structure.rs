use std::collections::VecDeque;

use glu_core::census;
use glu_core::dual::{DualGraph, SpanningTree};
use glu_geom::dodecahedral::seifert_weber;
use glu_geom::model::{hyperboloid_to_uhs, uhs_to_hyperboloid};
use glu_geom::{
    build_poly_system, face_pairing_isometries, solve_structure, systole_estimate,
    translation_length, verify_poincare_conditions, AngleMode, Isometry, PointHyperboloid,
    SolveOptions,
};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn oracle_structure_passes_and_perturbations_fail() {
    let sw = seifert_weber();
    let report = verify_poincare_conditions(&sw.vertices, &sw.tri, 1e-10);
    assert!(report.pass);
    let mut moved = sw.vertices.clone();
    moved[7][2].x1 += 1e-3;
    let report = verify_poincare_conditions(&moved, &sw.tri, 1e-6);
    assert!(!report.pass);
    assert!(report.max_defect() > 1e-6);
    let mut swapped = sw.vertices.clone();
    swapped[3].swap(2, 3);
    let flipped = verify_poincare_conditions(&swapped, &sw.tri, 1e-6);
    assert_eq!(flipped.orientation[3], -verify_poincare_conditions(&sw.vertices, &sw.tri, 1e-6).orientation[3]);
    assert!(!flipped.pass);
}

#[test]
fn doubled_tetrahedron_has_no_structure() {
    let (_, tri) = census::fixtures().into_iter().find(|(n, _)| n == "double").unwrap();
    let sys = build_poly_system(&tri, AngleMode::Direct).unwrap();
    for seed in 0..3 {
        let opts = SolveOptions { restarts: 40, seed, ..SolveOptions::default() };
        assert!(solve_structure(&sys, &opts).is_err());
    }
}

/// BFS tree of the dual graph using only faces inside the dodecahedron.
fn interior_tree(dual: &DualGraph) -> SpanningTree {
    let t = dual.nodes;
    let mut parent = vec![None; t];
    let mut seen = vec![false; t];
    let (mut order, mut edges) = (Vec::new(), Vec::new());
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for face in 1..4 {
            let e = dual.edge_at[u][face];
            let g = dual.edges[e];
            let w = if g.source.0 == u { g.target.0 } else { g.source.0 };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((u, e));
                edges.push(e);
                queue.push_back(w);
            }
        }
    }
    assert_eq!(order.len(), t);
    SpanningTree { root: 0, edges, parent, order }
}

#[test]
fn interior_pairings_are_trivial_and_boundary_pairings_generate() {
    let sw = seifert_weber();
    let dual = DualGraph::new(&sw.tri);
    let tree = interior_tree(&dual);
    let dev = face_pairing_isometries(&sw.vertices, &sw.tri, &tree, 0, 1e-8).unwrap();
    assert_eq!(dev.pairings.len(), 61);
    let mut distinct: Vec<Isometry> = Vec::new();
    for p in &dev.pairings {
        let boundary = p.gluing.source.1 == 0;
        let trivial = p.matrix.distance(&Isometry::IDENTITY) < 1e-8;
        assert_eq!(boundary, !trivial);
        if boundary {
            assert!(translation_length(&p.matrix) > 0.5);
            if !distinct.iter().any(|m| m.distance(&p.matrix) < 1e-8 || m.distance(&p.matrix.inverse()) < 1e-8) {
                distinct.push(p.matrix);
            }
        }
    }
    // one isometry per pair of opposite faces
    assert_eq!(distinct.len(), 6);
    let s1 = systole_estimate(&distinct, 1).unwrap();
    let s2 = systole_estimate(&distinct, 2).unwrap();
    let s3 = systole_estimate(&distinct, 3).unwrap();
    assert!(s2 <= s1 && s3 <= s2);
}

#[test]
fn conjugating_the_structure_conjugates_the_pairings() {
    let sw = seifert_weber();
    let tree = DualGraph::new(&sw.tri).spanning_tree(0).unwrap();
    let dev = face_pairing_isometries(&sw.vertices, &sw.tri, &tree, 0, 1e-8).unwrap();
    let b = Isometry::new(
        Complex64::new(1.1, 0.2),
        Complex64::new(0.3, -0.4),
        Complex64::new(-0.2, 0.1),
        Complex64::new(0.9, 0.0),
    )
    .normalized()
    .unwrap();
    let moved: Vec<_> = sw
        .vertices
        .iter()
        .map(|v| v.map(|p| hyperboloid_to_uhs(PointHyperboloid(b.act(uhs_to_hyperboloid(p).0))).unwrap()))
        .collect();
    let dev2 = face_pairing_isometries(&moved, &sw.tri, &tree, 0, 1e-8).unwrap();
    for (p, q) in dev.pairings.iter().zip(&dev2.pairings) {
        assert_eq!(p.edge, q.edge);
        assert!(q.matrix.distance(&p.matrix.conjugate_by(&b)) < 1e-9);
    }
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn special() -> impl Strategy<Value = Isometry> {
    (complex(), complex(), complex(), complex())
        .prop_filter_map("singular", |(a, b, c, d)| {
            let m = Isometry::new(a, b, c, d);
            (m.det().norm() > 0.1).then(|| m.normalized()).flatten()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn translation_length_is_a_conjugacy_invariant(a in special(), b in special()) {
        let l = translation_length(&a);
        prop_assert!((l - translation_length(&a.conjugate_by(&b))).abs() < 1e-10 * l.max(1.0));
        prop_assert!((l - translation_length(&a.inverse())).abs() < 1e-10 * l.max(1.0));
    }

    #[test]
    fn systole_estimate_does_not_increase_with_length(a in special(), b in special()) {
        let gens = [a, b];
        let mut last = f64::INFINITY;
        for len in 1..=4 {
            if let Some(s) = systole_estimate(&gens, len) {
                prop_assert!(s <= last);
                last = s;
            }
        }
    }
}
