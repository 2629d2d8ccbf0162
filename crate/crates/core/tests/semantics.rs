use proptest::prelude::*;

use sabotage_bisim::bisim::random_model;
use sabotage_bisim::formula::random_formula;
use sabotage_bisim::semantics::{eval_all, eval_cached};
use sabotage_bisim::{eval, parse, Formula, Fragment};

fn pool() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

fn any_fragment() -> impl Strategy<Value = Fragment> {
    prop::sample::select(Fragment::ALL.to_vec())
}

proptest! {
    #[test]
    fn cache_does_not_change_results(seed in any::<u64>(), fragment in any_fragment()) {
        let m = random_model(seed, 3, 5, &pool());
        let f = random_formula(seed ^ 0x5eed, fragment, 4, &pool());
        prop_assert_eq!(eval(&m, &f).unwrap(), eval_cached(&m, &f).unwrap());
    }

    #[test]
    fn all_worlds_agrees_with_repointed_eval(seed in any::<u64>(), fragment in any_fragment()) {
        let m = random_model(seed, 3, 5, &pool());
        let f = random_formula(seed.wrapping_add(1), fragment, 3, &pool());
        for (w, v) in eval_all(m.model(), &f).unwrap() {
            prop_assert_eq!(eval(&m.repoint(&w).unwrap(), &f).unwrap(), v);
        }
    }

    #[test]
    fn boxes_are_dual_to_diamonds(seed in any::<u64>()) {
        let m = random_model(seed, 3, 4, &pool());
        let g = |s: u64| random_formula(seed.wrapping_mul(31).wrapping_add(s), Fragment::Mlsr, 3, &pool());
        let (phi, psi, chi) = (g(0), g(1), g(2));
        let not = Formula::not;
        let cases = [
            (Formula::boxed(phi.clone()), not(Formula::dia(not(phi.clone())))),
            (Formula::sab_box(phi.clone()), not(Formula::sab(not(phi.clone())))),
            (Formula::gsab_box(psi.clone(), chi.clone(), phi.clone()), not(Formula::gsab(psi.clone(), chi.clone(), not(phi.clone())))),
            (Formula::rem_box(phi.clone()), not(Formula::rem(not(phi.clone())))),
            (Formula::grem_box(psi.clone(), phi.clone()), not(Formula::grem(psi.clone(), not(phi.clone())))),
            (Formula::sab(phi.clone()), Formula::gsab(Formula::Top, Formula::Top, phi.clone())),
            (Formula::rem(phi.clone()), Formula::grem(Formula::Top, phi.clone())),
        ];
        for (a, b) in cases {
            prop_assert_eq!(eval(&m, &a).unwrap(), eval(&m, &b).unwrap(), "{} vs {}", a, b);
        }
    }

    #[test]
    fn counting_deletions(seed in any::<u64>()) {
        // sab^k true holds iff at least k edges exist; rem^k true iff at
        // least k worlds besides the point exist.
        let m = random_model(seed, 4, 6, &pool());
        let (edges, worlds) = (m.model().edges().len(), m.model().worlds().len());
        for k in 0..=7usize {
            let sab = (0..k).fold(Formula::Top, |f, _| Formula::sab(f));
            let rem = (0..k).fold(Formula::Top, |f, _| Formula::rem(f));
            prop_assert_eq!(eval(&m, &sab).unwrap(), edges >= k);
            prop_assert_eq!(eval(&m, &rem).unwrap(), worlds > k);
        }
    }
}

#[test]
fn guards_select_the_deleted_edge() {
    let m = sabotage_bisim::load_model(
        r#"{"worlds":["a","b"],"edges":[["a","b"],["b","b"]],"propositions":["p"],"valuation":{"p":["a"]},"point":"a"}"#,
    )
    .unwrap();
    // Only (a, b) starts at a p-world; cutting it leaves a without successors.
    assert!(eval(&m, &parse("sab{p|true} box false").unwrap()).unwrap());
    assert!(!eval(&m, &parse("sab{~p|true} box false").unwrap()).unwrap());
    assert!(eval(&m, &parse("rem{~p} ~dia true").unwrap()).unwrap());
}
