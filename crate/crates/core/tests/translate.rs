use std::collections::BTreeSet;

use proptest::prelude::*;

use sabotage_bisim::bisim::random_model;
use sabotage_bisim::translate::{
    edge_world, translate_f, translate_g, SinkEdges, EDGE_PROP, SINK_PROP, SINK_WORLD,
};
use sabotage_bisim::World;

fn pool() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

proptest! {
    #[test]
    fn f_size_and_marking(seed in any::<u64>(), w in 1usize..6, e in 0usize..12) {
        let m = random_model(seed, w, e, &pool());
        let m = m.model();
        let t = translate_f(m).unwrap();
        prop_assert_eq!(t.worlds().len(), m.worlds().len() + m.edges().len());
        prop_assert_eq!(t.edges().len(), 2 * m.edges().len());
        let fresh: BTreeSet<World> = m.edges().iter().map(edge_world).collect();
        prop_assert_eq!(&t.valuation()[EDGE_PROP], &fresh);
        for (p, ws) in m.valuation() {
            prop_assert_eq!(&t.valuation()[p], ws);
        }
        // Every edge world has exactly one predecessor and one successor.
        for x in &fresh {
            prop_assert_eq!(t.successors(x).count(), 1);
            prop_assert_eq!(t.edges().iter().filter(|e| &e.1 == x).count(), 1);
        }
    }

    #[test]
    fn g_size_and_marking(seed in any::<u64>(), w in 1usize..6, e in 0usize..12) {
        let m = random_model(seed, w, e, &pool());
        let m = m.model();
        let sink = World::new(SINK_WORLD);
        let lit = translate_g(m, SinkEdges::Literal).unwrap();
        let int = translate_g(m, SinkEdges::Intent).unwrap();
        for t in [&lit, &int] {
            prop_assert_eq!(t.worlds().len(), m.worlds().len() + 1);
            prop_assert_eq!(&t.valuation()[SINK_PROP], &BTreeSet::from([sink.clone()]));
            for (p, ws) in m.valuation() {
                prop_assert_eq!(&t.valuation()[p], ws);
            }
        }
        prop_assert_eq!(lit.edges(), m.edges());
        prop_assert_eq!(int.edges().len(), m.edges().len() + m.worlds().len());
    }
}
