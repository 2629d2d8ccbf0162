//! Plain modal bisimilarity as a greatest fixpoint on `W1 × W2`.

use super::{Answer, Condition, Verdict, WitnessStep};
use crate::frame::Frame;
use crate::model::PointedModel;

/// Largest relation of atom-agreeing pairs closed under Zig and Zag; the
/// answer is whether it contains the two points.
pub fn modal_bisimilar(m1: &PointedModel, m2: &PointedModel) -> Verdict {
    let props: Vec<String> = m1
        .model()
        .propositions()
        .union(m2.model().propositions())
        .cloned()
        .collect();
    let f1 = Frame::new(m1.model(), &props);
    let f2 = Frame::new(m2.model(), &props);
    let (n1, n2) = (f1.worlds.len(), f2.worlds.len());
    let succ =
        |f: &Frame, w: usize| -> Vec<usize> { f.out[w].iter().map(|&e| f.edges[e].1).collect() };
    let succ1: Vec<Vec<usize>> = (0..n1).map(|w| succ(&f1, w)).collect();
    let succ2: Vec<Vec<usize>> = (0..n2).map(|w| succ(&f2, w)).collect();

    let mut rel = vec![vec![false; n2]; n1];
    for (a, row) in rel.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = f1.labels[a] == f2.labels[b];
        }
    }
    let violation = |rel: &Vec<Vec<bool>>, a: usize, b: usize| -> Option<(Condition, String)> {
        if let Some(&u) = succ1[a]
            .iter()
            .find(|&&u| !succ2[b].iter().any(|&v| rel[u][v]))
        {
            return Some((Condition::ZigModal, f1.worlds[u].to_string()));
        }
        if let Some(&v) = succ2[b]
            .iter()
            .find(|&&v| !succ1[a].iter().any(|&u| rel[u][v]))
        {
            return Some((Condition::ZagModal, f2.worlds[v].to_string()));
        }
        None
    };
    let mut rounds = 0u64;
    loop {
        rounds += 1;
        let mut changed = false;
        for a in 0..n1 {
            for b in 0..n2 {
                if rel[a][b] && violation(&rel, a, b).is_some() {
                    rel[a][b] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let p1 = f1.index_of(m1.point()).expect("validated point");
    let p2 = f2.index_of(m2.point()).expect("validated point");
    let answer = Answer::from(rel[p1][p2]);
    let witness = (!rel[p1][p2]).then(|| {
        let (condition, item) = if f1.labels[p1] != f2.labels[p2] {
            let p = (0..props.len())
                .find(|&i| f1.labels[p1].contains(i) != f2.labels[p2].contains(i))
                .expect("labels differ somewhere");
            (Condition::Atom, props[p].clone())
        } else {
            violation(&rel, p1, p2).expect("removed pairs violate a clause")
        };
        vec![WitnessStep {
            condition,
            left: m1.point().to_string(),
            right: m2.point().to_string(),
            item: Some(item),
            deleted_left: vec![],
            deleted_right: vec![],
        }]
    });
    Verdict {
        answer,
        max_depth: 0,
        calls: rounds,
        witness,
    }
}
