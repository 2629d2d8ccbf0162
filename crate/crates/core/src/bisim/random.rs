//! Seeded random models and model pairs for property tests and sweeps.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Edge, KripkeModel, PointedModel, World};

/// A model with 1..=`max_worlds` worlds named `w0`, `w1`, ..., at most
/// `max_edges` distinct edges, each proposition of `prop_pool` declared and
/// true at each world with probability 1/2, and a random point.
///
/// Panics if `max_worlds == 0`.
pub fn random_model(
    seed: u64,
    max_worlds: usize,
    max_edges: usize,
    prop_pool: &[String],
) -> PointedModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_model(&mut rng, max_worlds, max_edges, prop_pool, "w")
}

fn gen_model(
    rng: &mut ChaCha8Rng,
    max_worlds: usize,
    max_edges: usize,
    prop_pool: &[String],
    prefix: &str,
) -> PointedModel {
    assert!(max_worlds >= 1, "max_worlds must be at least 1");
    let n = rng.gen_range(1..=max_worlds);
    let worlds: Vec<World> = (0..n).map(|i| World::new(format!("{prefix}{i}"))).collect();
    let all_edges: Vec<Edge> = worlds
        .iter()
        .flat_map(|u| worlds.iter().map(move |v| Edge(u.clone(), v.clone())))
        .collect();
    let k = rng.gen_range(0..=max_edges.min(all_edges.len()));
    let edges: BTreeSet<Edge> = all_edges
        .into_iter()
        .choose_multiple(rng, k)
        .into_iter()
        .collect();
    let valuation: BTreeMap<String, BTreeSet<World>> = prop_pool
        .iter()
        .map(|p| {
            let ws = worlds
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect();
            (p.clone(), ws)
        })
        .collect();
    let point = worlds.choose(rng).expect("at least one world").clone();
    let model = KripkeModel::from_parts_unchecked(
        worlds.into_iter().collect(),
        edges,
        prop_pool.iter().cloned().collect(),
        valuation,
    );
    PointedModel::new(model, point).expect("point is a world")
}

/// A pair of random models biased towards interesting instances. Independent
/// models are rarely bisimilar under the deletion notions, so about a third
/// of the pairs are isomorphic copies (renamed worlds) and another third are
/// copies with one small change: an edge toggled, a proposition flipped at
/// one world, or the point moved.
pub fn random_pair(
    seed: u64,
    max_worlds: usize,
    max_edges: usize,
    prop_pool: &[String],
) -> (PointedModel, PointedModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = gen_model(&mut rng, max_worlds, max_edges, prop_pool, "w");
    let second = match rng.gen_range(0..3) {
        0 => gen_model(&mut rng, max_worlds, max_edges, prop_pool, "v"),
        1 => relabel(&mut rng, &first),
        _ => {
            let copy = relabel(&mut rng, &first);
            mutate(&mut rng, &copy, max_edges)
        }
    };
    (first, second)
}

/// Isomorphic copy with worlds renamed `v0`, `v1`, ... under a random
/// permutation.
fn relabel(rng: &mut ChaCha8Rng, pm: &PointedModel) -> PointedModel {
    let m = pm.model();
    let mut targets: Vec<usize> = (0..m.worlds().len()).collect();
    targets.shuffle(rng);
    let rename: BTreeMap<&World, World> = m
        .worlds()
        .iter()
        .zip(targets)
        .map(|(w, i)| (w, World::new(format!("v{i}"))))
        .collect();
    let model = KripkeModel::from_parts_unchecked(
        rename.values().cloned().collect(),
        m.edges()
            .iter()
            .map(|e| Edge(rename[&e.0].clone(), rename[&e.1].clone()))
            .collect(),
        m.propositions().clone(),
        m.valuation()
            .iter()
            .map(|(p, ws)| (p.clone(), ws.iter().map(|w| rename[w].clone()).collect()))
            .collect(),
    );
    PointedModel::new(model, rename[pm.point()].clone()).expect("renamed point exists")
}

fn mutate(rng: &mut ChaCha8Rng, pm: &PointedModel, max_edges: usize) -> PointedModel {
    let m = pm.model();
    let worlds: Vec<&World> = m.worlds().iter().collect();
    match rng.gen_range(0..3) {
        0 => {
            let u = (*worlds.choose(rng).expect("non-empty")).clone();
            let v = (*worlds.choose(rng).expect("non-empty")).clone();
            let e = Edge(u, v);
            let model = if m.has_edge(&e) {
                m.delete_edge(&e).expect("edge present")
            } else if m.edges().len() < max_edges {
                m.add_edge(e).expect("declared worlds")
            } else {
                m.clone()
            };
            PointedModel::new(model, pm.point().clone()).expect("same worlds")
        }
        1 if !m.propositions().is_empty() => {
            let p = m
                .propositions()
                .iter()
                .choose(rng)
                .expect("non-empty")
                .clone();
            let w = (*worlds.choose(rng).expect("non-empty")).clone();
            let mut valuation = m.valuation().clone();
            let set = valuation.entry(p).or_default();
            if !set.remove(&w) {
                set.insert(w);
            }
            let model = KripkeModel::from_parts_unchecked(
                m.worlds().clone(),
                m.edges().clone(),
                m.propositions().clone(),
                valuation,
            );
            PointedModel::new(model, pm.point().clone()).expect("same worlds")
        }
        _ => {
            let point = (*worlds.choose(rng).expect("non-empty")).clone();
            PointedModel::new(m.clone(), point).expect("declared world")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool() -> Vec<String> {
        vec!["p".to_string()]
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            random_model(3, 4, 5, &pool()),
            random_model(3, 4, 5, &pool())
        );
        assert_eq!(random_pair(3, 4, 5, &pool()), random_pair(3, 4, 5, &pool()));
    }

    #[test]
    fn respects_bounds_and_validates() {
        for seed in 0..200 {
            let m = random_model(seed, 3, 4, &pool());
            assert!(m.validate().is_empty());
            assert!(m.model().worlds().len() <= 3);
            assert!(m.model().edges().len() <= 4);
            let (a, b) = random_pair(seed, 3, 4, &pool());
            for x in [a, b] {
                assert!(x.validate().is_empty());
                assert!(x.model().worlds().len() <= 3);
                assert!(x.model().edges().len() <= 4);
            }
        }
    }

    #[test]
    fn zero_edges() {
        for seed in 0..20 {
            assert!(random_model(seed, 4, 0, &pool()).model().edges().is_empty());
        }
    }
}
