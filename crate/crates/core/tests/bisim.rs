use proptest::prelude::*;

use sabotage_bisim::bisim::{
    check_with, modal_bisimilar, oracle_bisimilar, proven_depth_bound, random_model, random_pair,
    CheckOptions, Condition,
};
use sabotage_bisim::{load_model, BisimKind};

const DELETION: [BisimKind; 4] = [BisimKind::S, BisimKind::D, BisimKind::G, BisimKind::R];
const CACHED: CheckOptions = CheckOptions { cache: true };
const LITERAL: CheckOptions = CheckOptions { cache: false };

fn pool() -> Vec<String> {
    vec!["p".into()]
}

fn two_props() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

fn any_kind() -> impl Strategy<Value = BisimKind> {
    prop::sample::select(DELETION.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn every_model_is_bisimilar_to_itself(seed in any::<u64>(), kind in any_kind()) {
        let m = random_model(seed, 3, 4, &pool());
        prop_assert!(check_with(kind, &m, &m, CACHED).is_yes());
        prop_assert!(oracle_bisimilar(kind, &m, &m).unwrap().is_yes());
        prop_assert!(modal_bisimilar(&m, &m).is_yes());
    }

    #[test]
    fn answers_are_symmetric(seed in any::<u64>(), kind in any_kind()) {
        let (a, b) = random_pair(seed, 3, 4, &pool());
        prop_assert_eq!(check_with(kind, &a, &b, CACHED).answer, check_with(kind, &b, &a, CACHED).answer);
        prop_assert_eq!(modal_bisimilar(&a, &b).answer, modal_bisimilar(&b, &a).answer);
    }

    #[test]
    fn cache_preserves_answers_for_edge_and_point_deletion(seed in any::<u64>(), d in any::<bool>()) {
        let kind = if d { BisimKind::D } else { BisimKind::S };
        let (a, b) = random_pair(seed, 3, 3, &pool());
        let literal = check_with(kind, &a, &b, LITERAL);
        prop_assert_eq!(literal.answer, check_with(kind, &a, &b, CACHED).answer);
        prop_assert!(literal.max_depth <= proven_depth_bound(kind, &a, &b).unwrap());
    }

    #[test]
    fn cache_preserves_answers_for_generalized_kinds(seed in any::<u64>(), r in any::<bool>()) {
        let kind = if r { BisimKind::R } else { BisimKind::G };
        let (a, b) = random_pair(seed, 2, 2, &pool());
        prop_assert_eq!(check_with(kind, &a, &b, LITERAL).answer, check_with(kind, &a, &b, CACHED).answer);
    }

    #[test]
    fn checkers_agree_with_oracle_on_two_propositions(seed in any::<u64>(), kind in any_kind()) {
        let (a, b) = random_pair(seed, 3, 3, &two_props());
        let opts = if matches!(kind, BisimKind::G | BisimKind::R) { CACHED } else { LITERAL };
        let v = check_with(kind, &a, &b, opts);
        prop_assert_eq!(v.answer, oracle_bisimilar(kind, &a, &b).unwrap().answer);
        prop_assert_eq!(modal_bisimilar(&a, &b).answer, oracle_bisimilar(BisimKind::Modal, &a, &b).unwrap().answer);
    }

    #[test]
    fn verdicts_carry_witnesses_exactly_when_negative(seed in any::<u64>(), kind in any_kind()) {
        let (a, b) = random_pair(seed, 3, 4, &pool());
        for v in [check_with(kind, &a, &b, CACHED), oracle_bisimilar(kind, &a, &b).unwrap()] {
            match &v.witness {
                Some(steps) => prop_assert!(!v.is_yes() && !steps.is_empty()),
                None => prop_assert!(v.is_yes()),
            }
        }
    }

    #[test]
    fn finer_notions_imply_coarser_ones(seed in any::<u64>()) {
        let (a, b) = random_pair(seed, 3, 4, &pool());
        let yes = |k| oracle_bisimilar(k, &a, &b).unwrap().is_yes();
        prop_assert!(!yes(BisimKind::G) || yes(BisimKind::S));
        prop_assert!(!yes(BisimKind::R) || yes(BisimKind::D));
        for k in DELETION {
            prop_assert!(!yes(k) || yes(BisimKind::Modal));
        }
        if yes(BisimKind::S) {
            prop_assert_eq!(a.model().edges().len(), b.model().edges().len());
        }
        if yes(BisimKind::D) {
            prop_assert_eq!(a.model().worlds().len(), b.model().worlds().len());
        }
    }
}

fn model(text: &str) -> sabotage_bisim::PointedModel {
    load_model(text).unwrap()
}

#[test]
fn golden_pair_separates_modal_from_deletion_kinds() {
    let a = model(
        r#"{"worlds":["x","y"],"edges":[["x","y"],["y","y"]],"propositions":["p"],"valuation":{"p":["x","y"]},"point":"x"}"#,
    );
    let b = model(
        r#"{"worlds":["z","u"],"edges":[["z","z"],["u","u"]],"propositions":["p"],"valuation":{"p":["z","u"]},"point":"z"}"#,
    );
    assert!(modal_bisimilar(&a, &b).is_yes());
    for k in DELETION {
        for opts in [LITERAL, CACHED] {
            assert!(!check_with(k, &a, &b, opts).is_yes(), "{k}");
        }
        assert!(!oracle_bisimilar(k, &a, &b).unwrap().is_yes(), "{k}");
    }
}

#[test]
fn count_gates_fire_first() {
    let one = model(
        r#"{"worlds":["w"],"edges":[["w","w"]],"propositions":[],"valuation":{},"point":"w"}"#,
    );
    let two = model(
        r#"{"worlds":["a","b"],"edges":[["a","b"],["b","a"]],"propositions":[],"valuation":{},"point":"a"}"#,
    );
    let s = check_with(BisimKind::S, &one, &two, LITERAL);
    assert_eq!(s.witness.unwrap()[0].condition, Condition::EdgeCount);
    assert_eq!(s.calls, 1);
    let d = check_with(BisimKind::D, &one, &two, LITERAL);
    assert_eq!(d.witness.unwrap()[0].condition, Condition::WorldCount);
    // Modal bisimilar: a 2-cycle unravels to the same tree as a loop.
    assert!(modal_bisimilar(&one, &two).is_yes());
}

#[test]
fn generalized_kinds_compare_what_gets_deleted() {
    // The point is isolated in both models, so any loop cut elsewhere is
    // matched for `s`. For `g` the loops must join bisimilar worlds, and
    // they differ on p.
    let a = model(
        r#"{"worlds":["w0","w1"],"edges":[["w1","w1"]],"propositions":["p"],"valuation":{"p":[]},"point":"w0"}"#,
    );
    let b = model(
        r#"{"worlds":["v0","v1"],"edges":[["v0","v0"]],"propositions":["p"],"valuation":{"p":["v0"]},"point":"v1"}"#,
    );
    assert!(check_with(BisimKind::S, &a, &b, LITERAL).is_yes());
    assert!(!check_with(BisimKind::G, &a, &b, LITERAL).is_yes());

    // Edgeless models: deleting the other world always matches for `d`, but
    // `r` also requires the deleted worlds to agree on p.
    let a = model(
        r#"{"worlds":["w0","w1"],"edges":[],"propositions":["p"],"valuation":{"p":["w0","w1"]},"point":"w1"}"#,
    );
    let b = model(
        r#"{"worlds":["v0","v1"],"edges":[],"propositions":["p"],"valuation":{"p":["v1"]},"point":"v1"}"#,
    );
    assert!(check_with(BisimKind::D, &a, &b, LITERAL).is_yes());
    let r = check_with(BisimKind::R, &a, &b, LITERAL);
    assert!(!r.is_yes());
    assert_eq!(r.witness.unwrap()[0].condition, Condition::ZigRemoval);
}
