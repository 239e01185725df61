//! Acceptance checks, one PASS/FAIL line each. Exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod core_oracles;
#[path = "../../geom/tests/common/mod.rs"]
mod geom_oracles;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use glu_cli::{cmd_compare, kalelkar_phanse_bound, PipelineConfig};
use glu_core::census;
use glu_core::link::is_closed_3_manifold;
use glu_core::orient::orientation;
use glu_core::pachner::{
    apply_elementary, enumerate_moves, first_coned_subdivision, inverse_of, scramble,
    subdivision_move_bound, subdivision_move_sequence,
};
use glu_core::pi1::{
    abelianization, face_pairing_words, partial_barycentric_subdivision,
    presentation_from_triangulation, verify_words,
};
use glu_core::quotient::{apply_identifications, enumerate_quotients, QuotientFilters, QuotientSpec};
use glu_core::signature::{are_isomorphic, iso_signature};
use glu_core::subdivide::{barycentric_subdivision, first_coned_subdivision_direct};
use glu_core::{Perm4, Skeleton};
use glu_geom::dodecahedral::seifert_weber;
use glu_geom::model::{
    ball_distance, hyperbolic_distance, hyperboloid_distance, uhs_to_ball, uhs_to_hyperboloid,
};
use glu_geom::tetra::{orientation_sign, realize_from_lengths};
use glu_geom::{
    build_poly_system, dihedral_angles, face_pairing_isometries, solve_structure,
    verify_poincare_conditions, AngleMode, BoxChoice, SolveOptions,
};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coned_subdivision_count() -> Check {
    for (name, tri) in census::instances(6) {
        let t = tri.tet_count();
        let c = first_coned_subdivision(&tri);
        ensure(c.tri.tet_count() == 12 * t, || format!("{name}: {} tetrahedra", c.tri.tet_count()))?;
        ensure(c.elementary == 5 * t, || format!("{name}: {} moves", c.elementary))?;
        let r = c.sequence.replay(&tri).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.elementary == 5 * t, || format!("{name}: replay used {}", r.elementary))?;
        ensure(are_isomorphic(&r.result, &first_coned_subdivision_direct(&tri).tri), || {
            format!("{name}: replay does not reach the coned subdivision")
        })?;
    }
    Ok(())
}

fn subdivision_sequence_bound() -> Check {
    for (name, tri) in census::instances(3) {
        let t = tri.tet_count();
        let sub = barycentric_subdivision(&tri);
        let big_t = sub.tri.tet_count();
        ensure(big_t == 24 * t, || format!("{name}: T = {big_t}"))?;
        let seq = subdivision_move_sequence(&tri, &sub).map_err(|e| format!("{name}: {e}"))?;
        let r = seq.replay(&tri).map_err(|e| format!("{name}: {e}"))?;
        let bound = (48 * t * big_t + 9 * big_t + 9 * t) as u64;
        ensure(subdivision_move_bound(t, big_t) == bound, || format!("{name}: bound formula"))?;
        ensure(r.elementary as u64 <= bound, || format!("{name}: {} > {bound}", r.elementary))?;
        ensure(iso_signature(&r.result) == iso_signature(&sub.tri), || format!("{name}: wrong target"))?;
    }
    Ok(())
}

fn pachner_soundness() -> Check {
    for (name, tri) in census::instances(5) {
        let sig = iso_signature(&tri);
        for mv in enumerate_moves(&tri) {
            let a = apply_elementary(&tri, &mv).map_err(|e| format!("{name} {mv}: {e}"))?;
            ensure(is_closed_3_manifold(&a.result), || format!("{name} {mv}: not a manifold"))?;
            ensure(core_oracles::oracle_is_manifold(&a.result), || format!("{name} {mv}: oracle disagrees"))?;
            let chi = Skeleton::new(&a.result).report().euler_characteristic;
            ensure(chi == 0 && core_oracles::oracle_euler(&a.result) == 0, || format!("{name} {mv}: χ = {chi}"))?;
            let back = apply_elementary(&a.result, &inverse_of(&a)).map_err(|e| format!("{name} {mv}: {e}"))?;
            ensure(iso_signature(&back.result) == sig, || format!("{name} {mv}: inverse differs"))?;
        }
    }
    Ok(())
}

fn model_geometry_oracles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let base = glu_geom::PointUHS::new(0.0, 0.0, 1.0).unwrap();
    for n in 0..1000 {
        let (x, y) = (geom_oracles::random_point(&mut rng), geom_oracles::random_point(&mut rng));
        let d = hyperbolic_distance(x, y).map_err(|e| e.to_string())?;
        let tol = 1e-9 * d.max(1.0);
        let h = hyperboloid_distance(uhs_to_hyperboloid(x), uhs_to_hyperboloid(y));
        let b = ball_distance(uhs_to_ball(x, base).unwrap(), uhs_to_ball(y, base).unwrap());
        let c = geom_oracles::classical_distance(x, y);
        ensure((d - h).abs() < tol && (d - b).abs() < tol && (d - c).abs() < tol, || {
            format!("pair {n}: {d} {h} {b} {c}")
        })?;
    }
    let mut checked = 0;
    while checked < 1000 {
        let v = [0; 4].map(|_| geom_oracles::random_point(&mut rng));
        if orientation_sign(v, 1e-3).is_none() {
            continue;
        }
        let ours = dihedral_angles(v).map_err(|e| e.to_string())?;
        let oracle = geom_oracles::minkowski_normal_angles(v);
        for k in 0..6 {
            let (c, s) = ours[k];
            ensure((s.atan2(c) - oracle[k]).abs() < 1e-8, || format!("tetrahedron {checked}, edge {k}"))?;
        }
        checked += 1;
    }
    Ok(())
}

fn dihedral_limit() -> Check {
    let v = realize_from_lengths([1e-3; 6], 1).map_err(|e| e.to_string())?;
    let target = (1.0f64 / 3.0).acos();
    for (c, s) in dihedral_angles(v).map_err(|e| e.to_string())? {
        let a = s.atan2(c);
        ensure((a - target).abs() < 1e-3, || format!("{a} vs {target}"))?;
    }
    Ok(())
}

fn seifert_weber_geometrization() -> Check {
    let sw = seifert_weber();
    ensure(sw.tri.tet_count() == 60, || "expected 60 tetrahedra".into())?;
    // the oracle coordinates themselves satisfy the conditions
    let oracle = verify_poincare_conditions(&sw.vertices, &sw.tri, 1e-9);
    ensure(oracle.pass, || "oracle coordinates fail the Poincaré conditions".into())?;
    let sys = build_poly_system(&sw.tri, AngleMode::Direct).map_err(|e| e.to_string())?;
    for seed in [1u64, 2, 3] {
        let opts = SolveOptions { restarts: 200, seed, ..SolveOptions::default() };
        let s = solve_structure(&sys, &opts).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(s.residual < 1e-8, || format!("seed {seed}: residual {:e}", s.residual))?;
        let r = verify_poincare_conditions(&s.vertices(), &sw.tri, 1e-6);
        ensure(r.pass && r.max_defect() < 1e-6, || format!("seed {seed}: defect {:e}", r.max_defect()))?;
        ensure(r.max_spread() < 1e-8, || format!("seed {seed}: spread {:e}", r.max_spread()))?;
        let tree = sys.dual.spanning_tree(0).map_err(|e| e.to_string())?;
        face_pairing_isometries(&s.vertices(), &sw.tri, &tree, 0, 1e-8).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(())
}

fn quotient_oracle() -> Check {
    for (name, tri) in census::instances(2) {
        for (oriented, degree_one, manifold) in [
            (false, false, false),
            (false, false, true),
            (true, false, true),
            (true, true, true),
        ] {
            let filters = QuotientFilters { oriented, degree_one, manifold };
            let mut e = enumerate_quotients(&tri, filters, None).map_err(|e| format!("{name}: {e}"))?;
            let found: BTreeSet<String> = e.by_ref().map(|r| iso_signature(&r.quotient).to_string()).collect();
            ensure(e.is_complete(), || format!("{name}: incomplete"))?;
            let brute = core_oracles::quotient::brute_force(&tri, filters);
            ensure(found == brute, || format!("{name} {filters:?}: {found:?} vs {brute:?}"))?;
        }
    }
    Ok(())
}

fn quotient_degree() -> Check {
    for (name, tri) in census::instances(6) {
        if orientation(&tri).is_none() {
            continue;
        }
        let r = apply_identifications(&tri, &QuotientSpec::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.degree == Some(1), || format!("{name}: degree {:?}", r.degree))?;
    }
    for p in 2..=6usize {
        for d in (1..p).filter(|d| p % d == 0) {
            let tri = census::lens_space(p, 1);
            let spec = QuotientSpec { ids: (0..p - d).map(|i| (i, i + d, Perm4::IDENTITY)).collect() };
            let r = apply_identifications(&tri, &spec).map_err(|e| e.to_string())?;
            let o = core_oracles::brute_orientation(&tri).unwrap();
            let oq = core_oracles::brute_orientation(&r.quotient).unwrap();
            let count: i64 = (0..p)
                .filter(|&i| r.projection[i].0 == 0)
                .map(|i| o[i] as i64 * r.projection[i].1.sign() as i64 * oq[0] as i64)
                .sum();
            ensure(r.degree == Some(count.abs()) && count.abs() == (p / d) as i64, || {
                format!("L({p},1)/{d}: {:?} vs {count}", r.degree)
            })?;
        }
    }
    Ok(())
}

fn homology() -> Check {
    let double = abelianization(&presentation_from_triangulation(&census::double_tetrahedron()).map_err(|e| e.to_string())?);
    ensure(double.is_trivial(), || format!("double tetrahedron: {double}"))?;
    for p in 2..=5usize {
        for q in (1..p).filter(|&q| p.gcd(&q) == 1) {
            let a = abelianization(&presentation_from_triangulation(&census::lens_space(p, q)).map_err(|e| e.to_string())?);
            ensure(a.order() == Some(BigInt::from(p)) && a.free_rank == 0 && a.torsion.len() == 1, || {
                format!("L({p},{q}): {a}")
            })?;
        }
    }
    for (name, tri) in census::instances(6) {
        let p = presentation_from_triangulation(&tri).map_err(|e| format!("{name}: {e}"))?;
        ensure(p.total_length() <= 6 * tri.tet_count(), || format!("{name}: l(P) = {}", p.total_length()))?;
    }
    Ok(())
}

fn face_pairing_word_bound() -> Check {
    for (name, tri) in census::instances(3) {
        let t = tri.tet_count();
        let x = partial_barycentric_subdivision(&tri).map_err(|e| format!("{name}: {e}"))?;
        let words = face_pairing_words(&x, 4 * t as u64).map_err(|e| format!("{name}: {e}"))?;
        ensure(words.len() == x.simplicial_generators().len(), || format!("{name}: missing words"))?;
        ensure(words.iter().all(|w| w.word.len() <= 4 * t), || format!("{name}: word too long"))?;
        ensure(verify_words(&x, &words), || format!("{name}: a witness does not replay"))?;
    }
    Ok(())
}

fn kalelkar_phanse() -> Check {
    for (l, inj) in [(0.1, 0.1), (0.5, 1.0), (1e-3, 2.0), (3.0, 3.0)] {
        let b = kalelkar_phanse_bound(2, 3, l, inj);
        ensure(b.m == 0, || format!("L = {l}, inj = {inj}: m = {}", b.m))?;
    }
    let b = kalelkar_phanse_bound(2, 2, 0.5, 1.0);
    ensure(b.f() == BigInt::from(169_869_312u64), || format!("f = {}", b.f()))?;
    let (x, y) = (kalelkar_phanse_bound(3, 7, 2.0, 0.4), kalelkar_phanse_bound(7, 3, 2.0, 0.4));
    ensure(x.m > 0 && x.f() == y.f(), || "f is not symmetric".into())
}

fn compare_round_trip() -> Check {
    let cfg = PipelineConfig { cap: 6, seed: 5, restarts: 8, ..PipelineConfig::default() };
    for (name, a) in census::instances(3) {
        for k in 0..=5usize {
            let (b, _) = scramble(&a, k, 100 + k as u64);
            let out = cmd_compare(&a, &b, &cfg).map_err(|e| format!("{name} k = {k}: {e}"))?;
            ensure(out.report["verdict"] == "homeomorphic-witness", || format!("{name} k = {k}: no witness"))?;
            let seq = glu_core::pachner::MoveSequence::from_json_value(&out.report["witness"]).map_err(|e| e.to_string())?;
            let r = seq.replay(&a).map_err(|e| format!("{name} k = {k}: {e}"))?;
            ensure(iso_signature(&r.result) == iso_signature(&b), || format!("{name} k = {k}: wrong endpoint"))?;
            if k == 5 {
                let again = cmd_compare(&a, &b, &cfg).map_err(|e| e.to_string())?;
                ensure(again.to_text() == out.to_text(), || format!("{name}: reports differ between runs"))?;
            }
        }
    }
    Ok(())
}

fn system_stats() -> Check {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../geom/tests/golden/stats_constant.json");
    let golden: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let c = golden["C"].as_f64().ok_or("missing C")?;
    for (name, tri) in census::instances(6) {
        let t = tri.tet_count();
        let boxed = AngleMode::BoxGuess(BoxChoice::uniform(t, 2 * t as i64 - 1, 0));
        for mode in [AngleMode::Direct, boxed] {
            let s = build_poly_system(&tri, mode).map_err(|e| format!("{name}: {e}"))?.stats();
            let t = t as f64;
            ensure(
                s.constraints as f64 <= c * t * t && s.variables as f64 <= c * t && s.degree as f64 <= c * t,
                || format!("{name}: {s:?}"),
            )?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("coned subdivision count", coned_subdivision_count, Duration::from_secs(1)),
        ("subdivision sequence bound", subdivision_sequence_bound, Duration::from_secs(60)),
        ("pachner soundness", pachner_soundness, Duration::from_secs(60)),
        ("model geometry oracles", model_geometry_oracles, Duration::from_secs(5)),
        ("dihedral limit", dihedral_limit, Duration::from_secs(1)),
        ("seifert-weber geometrization", seifert_weber_geometrization, Duration::from_secs(600)),
        ("quotient enumeration oracle", quotient_oracle, Duration::from_secs(60)),
        ("quotient degree", quotient_degree, Duration::from_secs(1)),
        ("pi1 and homology", homology, Duration::from_secs(10)),
        ("face-pairing words", face_pairing_word_bound, Duration::from_secs(60)),
        ("kalelkar-phanse calculator", kalelkar_phanse, Duration::from_secs(1)),
        ("compare round trip", compare_round_trip, Duration::from_secs(300)),
        ("system stats", system_stats, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (n, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = result.and_then(|()| {
            ensure(took <= *limit, || format!("took {took:.2?}, limit {limit:?}"))
        });
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({took:.2?})", n + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {e}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
