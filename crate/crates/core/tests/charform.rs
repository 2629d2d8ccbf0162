use proptest::prelude::*;

use sabotage_bisim::bisim::{check_with, random_model, random_pair, CheckOptions};
use sabotage_bisim::charform::{build_char, char_check, CharformError};
use sabotage_bisim::{load_model, parse, print, BisimKind, Fragment};

const CACHED: CheckOptions = CheckOptions { cache: true };

fn pool() -> Vec<String> {
    vec!["p".into()]
}

fn fragment(kind: BisimKind) -> Fragment {
    match kind {
        BisimKind::S => Fragment::Sml,
        BisimKind::G => Fragment::Gsml,
        BisimKind::D => Fragment::Psl,
        _ => Fragment::Mlsr,
    }
}

fn any_kind() -> impl Strategy<Value = BisimKind> {
    prop::sample::select(vec![BisimKind::S, BisimKind::D, BisimKind::G, BisimKind::R])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formulas_print_parse_and_stay_in_fragment(seed in any::<u64>(), kind in any_kind()) {
        let m = random_model(seed, 3, 3, &pool());
        let f = build_char(kind, &m).unwrap();
        prop_assert!(f.in_fragment(fragment(kind)));
        prop_assert_eq!(parse(&print(&f)).unwrap(), f);
    }

    #[test]
    fn point_deletion_biconditional(seed in any::<u64>(), r in any::<bool>()) {
        let kind = if r { BisimKind::R } else { BisimKind::D };
        let (a, b) = random_pair(seed, 3, 3, &pool());
        prop_assert_eq!(char_check(kind, &a, &b).unwrap(), check_with(kind, &a, &b, CACHED).is_yes());
    }

    #[test]
    fn edge_deletion_formula_true_implies_bisimilar(seed in any::<u64>(), g in any::<bool>()) {
        let kind = if g { BisimKind::G } else { BisimKind::S };
        let (a, b) = random_pair(seed, 3, 3, &pool());
        if char_check(kind, &a, &b).unwrap() {
            prop_assert!(check_with(kind, &a, &b, CACHED).is_yes());
        }
    }
}

/// The fresh atoms are fixed on the original model. Here both loops carry
/// the atoms of both worlds, so after cutting one loop the formula demands
/// that the same world have and lack a successor. The pair is bisimilar to
/// itself but the formula is false.
#[test]
fn static_fresh_atoms_reject_two_symmetric_loops() {
    let m = load_model(r#"{"worlds":["a","b"],"edges":[["a","a"],["b","b"]],"propositions":[],"valuation":{},"point":"a"}"#)
        .unwrap();
    for kind in [BisimKind::S, BisimKind::G] {
        assert!(check_with(kind, &m, &m, CACHED).is_yes());
        assert!(!char_check(kind, &m, &m).unwrap(), "{kind}");
    }
    for kind in [BisimKind::D, BisimKind::R] {
        assert!(char_check(kind, &m, &m).unwrap(), "{kind}");
    }
}

#[test]
fn guard_and_kind_errors() {
    let big = random_model(1, 4, 16, &pool());
    let big = if big.model().edges().len() > 3 {
        big
    } else {
        random_model(2, 4, 16, &pool())
    };
    assert!(big.model().edges().len() > 3);
    assert!(matches!(
        build_char(BisimKind::S, &big),
        Err(CharformError::SizeGuardExceeded { .. })
    ));
    assert!(matches!(
        build_char(BisimKind::Modal, &big),
        Err(CharformError::UnsupportedKind(_))
    ));
}
