use glu_core::census;
use glu_core::pachner::{bounded_pachner_search, scramble};
use glu_core::signature::iso_signature;
use glu_core::MoveError;

#[test]
fn scrambles_are_undone_within_their_length() {
    for (name, tri) in census::instances(3) {
        for k in 0..=5 {
            let (s, _) = scramble(&tri, k, 7 + k as u64);
            let out = bounded_pachner_search(&tri, &s, 6, 1_000_000).unwrap();
            assert!(out.sequence.len() <= k, "{name} k = {k}");
            let r = out.sequence.replay(&tri).unwrap();
            assert_eq!(iso_signature(&r.result), iso_signature(&s), "{name} k = {k}");
            assert_eq!(r.elementary, out.sequence.len());
        }
    }
}

#[test]
fn isomorphic_inputs_give_the_empty_sequence() {
    for (_, tri) in census::instances(4) {
        let out = bounded_pachner_search(&tri, &tri, 0, 1).unwrap();
        assert!(out.sequence.is_empty());
    }
}

#[test]
fn zero_budget_on_distinct_inputs_is_exceeded() {
    let a = census::lens_space(3, 1);
    let (b, _) = scramble(&a, 1, 0);
    assert!(matches!(bounded_pachner_search(&a, &b, 0, 1_000), Err(MoveError::BudgetExceeded(0))));
    // a node cap that is too small also stops the search
    let (c, _) = scramble(&a, 5, 3);
    assert!(bounded_pachner_search(&a, &c, 6, 2).is_err());
}

#[test]
fn witness_does_not_depend_on_thread_count() {
    let a = census::lens_space(2, 1);
    let (b, _) = scramble(&a, 5, 11);
    let run = |n: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| bounded_pachner_search(&a, &b, 6, 1_000_000).unwrap().sequence.to_json())
    };
    assert_eq!(run(1), run(4));
}
