use glu_cli::{cmd_compare, kalelkar_phanse_bound, PipelineConfig, Status};
use glu_core::census;
use glu_core::pachner::scramble;
use glu_geom::dodecahedral::seifert_weber;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn hyperbolic_inputs_carry_the_reference_bound() {
    let sw = seifert_weber().tri;
    let cfg = PipelineConfig { seed: 1, ..PipelineConfig::default() };
    let out = cmd_compare(&sw, &sw, &cfg).unwrap();
    assert_eq!(out.status, Status::Completed);
    let r = &out.report;
    assert_eq!(r["verdict"], "homeomorphic-witness");
    assert_eq!(r["a"]["geometry"]["result"], "structure");
    let kp = &r["bounds"]["kalelkar_phanse"];
    assert_eq!(kp["t1"], 60);
    assert!(kp["log10_f"].as_f64().unwrap() > 10.0);
    // f is far beyond the cap, so the cap is what gets searched
    assert_eq!(r["bounds"]["budget_used"], cfg.cap);
    assert!(r["a"]["geometry"]["summary"]["edge_length_check"].is_boolean());
}

#[test]
fn non_hyperbolic_inputs_search_up_to_the_cap() {
    let a = census::lens_space(3, 1);
    let (b, _) = scramble(&a, 2, 1);
    let cfg = PipelineConfig { cap: 3, geometrize: false, ..PipelineConfig::default() };
    let out = cmd_compare(&a, &b, &cfg).unwrap();
    assert_eq!(out.report["a"]["geometry"]["result"], "skipped");
    assert!(out.report["bounds"]["kalelkar_phanse"].is_null());
    assert_eq!(out.report["bounds"]["budget_used"], 3);
    assert_eq!(out.report["verdict"], "homeomorphic-witness");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bound_is_symmetric(t1 in 1u64..50, t2 in 1u64..50, l in 0.01f64..3.0, inj in 0.01f64..3.0) {
        let (x, y) = (kalelkar_phanse_bound(t1, t2, l, inj), kalelkar_phanse_bound(t2, t1, l, inj));
        prop_assert_eq!(x.m, y.m);
        if x.m <= 20 {
            prop_assert_eq!(x.f(), y.f());
        }
    }

    #[test]
    fn short_edges_need_no_extra_layers(t1 in 1u64..50, t2 in 1u64..50, inj in 0.01f64..3.0, s in 0.01f64..=1.0) {
        let b = kalelkar_phanse_bound(t1, t2, inj * s, inj);
        prop_assert_eq!(b.m, 0);
        let expected = BigInt::from(32) * BigInt::from(24).pow(4) * t1 * t2 * (t1 + t2);
        prop_assert_eq!(b.f(), expected);
    }

    #[test]
    fn m_is_the_ceiling_of_the_displayed_expression(l in 0.01f64..2.0, inj in 0.01f64..2.0) {
        let x = (2.0 * l.cosh().powi(2) + 1.0) * (l / inj).ln();
        let m = kalelkar_phanse_bound(1, 1, l, inj).m;
        prop_assert_eq!(m, if x > 0.0 { x.ceil() as u64 } else { 0 });
    }
}
