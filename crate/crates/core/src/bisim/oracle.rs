//! Brute-force decision procedure used as ground truth in tests.
//!
//! A configuration is what remains of a model after some deletions plus a
//! current world. Starting from the pair of initial configurations, every
//! configuration pair that any clause of the chosen bisimulation can refer
//! to is enumerated. The candidate relation starts as all pairs that agree
//! on atoms and loses every pair that violates a clause with respect to the
//! current candidate, until nothing changes. The answer is whether the
//! initial pair survives.
//!
//! This deliberately shares no code with the recursive checkers: models are
//! re-encoded as bitmasks here.

use std::collections::HashMap;

use thiserror::Error;

use super::{Answer, BisimKind, Condition, Verdict, WitnessStep};
use crate::model::PointedModel;

/// Size limits for the oracle. The configuration space is exponential in
/// the number of deletable items.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleGuard {
    pub max_worlds: usize,
    pub max_edges: usize,
}

impl Default for OracleGuard {
    fn default() -> Self {
        OracleGuard {
            max_worlds: 5,
            max_edges: 6,
        }
    }
}

/// Restricts which items deletion clauses may remove. Both sides use the
/// same restriction. Unrestricted by default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeletionFilter {
    /// Only worlds where this proposition holds may be deleted.
    pub worlds_with: Option<String>,
    /// Only edges whose target satisfies this proposition may be deleted.
    pub edges_into: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle size guard exceeded: {worlds} worlds / {edges} edges (limit {max_worlds} / {max_edges})")]
    SizeGuardExceeded {
        worlds: usize,
        edges: usize,
        max_worlds: usize,
        max_edges: usize,
    },
}

/// Decides `kind`-bisimilarity with the default guard and no restriction.
pub fn oracle_bisimilar(
    kind: BisimKind,
    m1: &PointedModel,
    m2: &PointedModel,
) -> Result<Verdict, OracleError> {
    oracle_bisimilar_with(
        kind,
        m1,
        m2,
        OracleGuard::default(),
        &DeletionFilter::default(),
    )
}

pub fn oracle_bisimilar_with(
    kind: BisimKind,
    m1: &PointedModel,
    m2: &PointedModel,
    guard: OracleGuard,
    filter: &DeletionFilter,
) -> Result<Verdict, OracleError> {
    for m in [m1, m2] {
        let (w, e) = (m.model().worlds().len(), m.model().edges().len());
        if w > guard.max_worlds.min(64) || e > guard.max_edges.min(64) {
            return Err(OracleError::SizeGuardExceeded {
                worlds: w,
                edges: e,
                max_worlds: guard.max_worlds,
                max_edges: guard.max_edges,
            });
        }
    }
    let props: Vec<String> = m1
        .model()
        .propositions()
        .union(m2.model().propositions())
        .cloned()
        .collect();
    let a = Encoded::new(m1, &props, filter);
    let b = Encoded::new(m2, &props, filter);
    let mut space = Space {
        kind,
        a: &a,
        b: &b,
        index: HashMap::new(),
        pairs: Vec::new(),
        obligations: Vec::new(),
    };
    let root = space.intern((a.initial(), b.initial()));
    let mut next = 0;
    while next < space.pairs.len() {
        let obligations = space.obligations_of(next);
        space.obligations[next] = obligations;
        next += 1;
    }

    let mut alive: Vec<bool> = space
        .pairs
        .iter()
        .map(|(x, y)| a.labels[x.cur] == b.labels[y.cur])
        .collect();
    loop {
        let mut changed = false;
        for i in 0..space.pairs.len() {
            if alive[i] && first_broken(&space.obligations[i], &alive).is_some() {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let witness = (!alive[root]).then(|| {
        let (x, y) = space.pairs[root];
        let (condition, item) = if a.labels[x.cur] != b.labels[y.cur] {
            let p = (0..props.len())
                .find(|&i| a.labels[x.cur][i] != b.labels[y.cur][i])
                .expect("labels differ");
            (Condition::Atom, props[p].clone())
        } else {
            let o = first_broken(&space.obligations[root], &alive).expect("removed pair");
            (o.condition, o.item.clone())
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
    Ok(Verdict {
        answer: Answer::from(alive[root]),
        max_depth: 0,
        calls: space.pairs.len() as u64,
        witness,
    })
}

/// "For this item, some alternative has all its pairs related."
struct Obligation {
    condition: Condition,
    item: String,
    alternatives: Vec<Vec<usize>>,
}

fn first_broken<'o>(obligations: &'o [Obligation], alive: &[bool]) -> Option<&'o Obligation> {
    obligations.iter().find(|o| {
        !o.alternatives
            .iter()
            .any(|alt| alt.iter().all(|&p| alive[p]))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Config {
    worlds: u64,
    edges: u64,
    cur: usize,
}

struct Encoded {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    labels: Vec<Vec<bool>>,
    point: usize,
    deletable_worlds: u64,
    deletable_edges: u64,
}

impl Encoded {
    fn new(m: &PointedModel, props: &[String], filter: &DeletionFilter) -> Self {
        let model = m.model();
        let names: Vec<String> = model.worlds().iter().map(|w| w.to_string()).collect();
        let pos = |s: &str| names.iter().position(|n| n == s).expect("declared world");
        let edges: Vec<(usize, usize)> = model
            .edges()
            .iter()
            .map(|e| (pos(e.0.as_str()), pos(e.1.as_str())))
            .collect();
        let labels: Vec<Vec<bool>> = model
            .worlds()
            .iter()
            .map(|w| props.iter().map(|p| model.holds(p, w)).collect())
            .collect();
        let holds_at = |p: &Option<String>, w: usize| match p {
            None => true,
            Some(p) => model.holds(p, model.worlds().iter().nth(w).expect("index in range")),
        };
        let deletable_worlds = (0..names.len())
            .filter(|&w| holds_at(&filter.worlds_with, w))
            .fold(0u64, |m, w| m | 1 << w);
        let deletable_edges = edges
            .iter()
            .enumerate()
            .filter(|(_, &(_, v))| holds_at(&filter.edges_into, v))
            .fold(0u64, |m, (i, _)| m | 1 << i);
        Encoded {
            point: pos(m.point().as_str()),
            names,
            edges,
            labels,
            deletable_worlds,
            deletable_edges,
        }
    }

    fn initial(&self) -> Config {
        Config {
            worlds: low_bits(self.names.len()),
            edges: low_bits(self.edges.len()),
            cur: self.point,
        }
    }

    fn edge_alive(&self, c: &Config, i: usize) -> bool {
        let (u, v) = self.edges[i];
        c.edges >> i & 1 == 1 && c.worlds >> u & 1 == 1 && c.worlds >> v & 1 == 1
    }

    fn successors(&self, c: &Config, w: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].0 == w && self.edge_alive(c, i))
            .map(|i| self.edges[i].1)
            .collect()
    }

    fn deletable_edges(&self, c: &Config) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edge_alive(c, i) && self.deletable_edges >> i & 1 == 1)
            .collect()
    }

    fn deletable_worlds(&self, c: &Config) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&w| {
                w != c.cur && c.worlds >> w & 1 == 1 && self.deletable_worlds >> w & 1 == 1
            })
            .collect()
    }

    fn edge_name(&self, i: usize) -> String {
        let (u, v) = self.edges[i];
        format!("{}->{}", self.names[u], self.names[v])
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn at(c: Config, w: usize) -> Config {
    Config { cur: w, ..c }
}

struct Space<'e> {
    kind: BisimKind,
    a: &'e Encoded,
    b: &'e Encoded,
    index: HashMap<(Config, Config), usize>,
    pairs: Vec<(Config, Config)>,
    obligations: Vec<Vec<Obligation>>,
}

impl Space<'_> {
    fn intern(&mut self, p: (Config, Config)) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        let i = self.pairs.len();
        self.pairs.push(p);
        self.obligations.push(Vec::new());
        self.index.insert(p, i);
        i
    }

    fn obligations_of(&mut self, i: usize) -> Vec<Obligation> {
        let (x, y) = self.pairs[i];
        let (a, b) = (self.a, self.b);
        if a.labels[x.cur] != b.labels[y.cur] {
            // never in the relation; nothing to explore from here
            return Vec::new();
        }
        let mut out = Vec::new();

        let (s1, s2) = (a.successors(&x, x.cur), b.successors(&y, y.cur));
        for &u in &s1 {
            let alternatives = s2
                .iter()
                .map(|&v| vec![self.intern((at(x, u), at(y, v)))])
                .collect();
            out.push(Obligation {
                condition: Condition::ZigModal,
                item: a.names[u].clone(),
                alternatives,
            });
        }
        for &v in &s2 {
            let alternatives = s1
                .iter()
                .map(|&u| vec![self.intern((at(x, u), at(y, v)))])
                .collect();
            out.push(Obligation {
                condition: Condition::ZagModal,
                item: b.names[v].clone(),
                alternatives,
            });
        }

        if self.kind.deletes_edges() {
            let (d1, d2) = (a.deletable_edges(&x), b.deletable_edges(&y));
            let mut matched = |e1: usize, e2: usize| -> Vec<usize> {
                let after = (
                    Config {
                        edges: x.edges & !(1 << e1),
                        ..x
                    },
                    Config {
                        edges: y.edges & !(1 << e2),
                        ..y
                    },
                );
                let mut all = vec![self.intern(after)];
                if self.kind == BisimKind::G {
                    let (u1, v1) = a.edges[e1];
                    let (u2, v2) = b.edges[e2];
                    all.push(self.intern((at(x, u1), at(y, u2))));
                    all.push(self.intern((at(x, v1), at(y, v2))));
                }
                all
            };
            for &e1 in &d1 {
                let alternatives = d2.iter().map(|&e2| matched(e1, e2)).collect();
                out.push(Obligation {
                    condition: Condition::ZigSabotage,
                    item: a.edge_name(e1),
                    alternatives,
                });
            }
            for &e2 in &d2 {
                let alternatives = d1.iter().map(|&e1| matched(e1, e2)).collect();
                out.push(Obligation {
                    condition: Condition::ZagSabotage,
                    item: b.edge_name(e2),
                    alternatives,
                });
            }
        } else if self.kind.deletes_worlds() {
            let (d1, d2) = (a.deletable_worlds(&x), b.deletable_worlds(&y));
            let mut matched = |u1: usize, u2: usize| -> Vec<usize> {
                let after = (
                    Config {
                        worlds: x.worlds & !(1 << u1),
                        ..x
                    },
                    Config {
                        worlds: y.worlds & !(1 << u2),
                        ..y
                    },
                );
                let mut all = vec![self.intern(after)];
                if self.kind == BisimKind::R {
                    all.push(self.intern((at(x, u1), at(y, u2))));
                }
                all
            };
            for &u1 in &d1 {
                let alternatives = d2.iter().map(|&u2| matched(u1, u2)).collect();
                out.push(Obligation {
                    condition: Condition::ZigRemoval,
                    item: a.names[u1].clone(),
                    alternatives,
                });
            }
            for &u2 in &d2 {
                let alternatives = d1.iter().map(|&u1| matched(u1, u2)).collect();
                out.push(Obligation {
                    condition: Condition::ZagRemoval,
                    item: b.names[u2].clone(),
                    alternatives,
                });
            }
        }
        out
    }
}
