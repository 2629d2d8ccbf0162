//! The recursive checkers for the four deletion bisimulations.
//!
//! One call compares a world of each (partially deleted) model:
//!
//! 1. count gate: equal numbers of edges (`s`, `g`) or worlds (`d`, `r`);
//! 2. atoms at the two worlds agree;
//! 3. every deletion on one side is matched by some deletion on the other
//!    side, checked by a fresh recursive call on the smaller models with an
//!    empty assumption set (first match wins);
//! 4. unless the current pair is already assumed, every modal successor on
//!    one side is matched by a successor on the other. Successor pairs that
//!    are assumed count as matched; the others are checked recursively with
//!    the current pair added to the assumptions. All candidates are tried.
//!
//! For `g` a candidate edge pair must also have bisimilar sources and
//! targets in the models before the deletion; for `r` the candidate deleted
//! worlds must be bisimilar before the deletion. Those side checks run on
//! the same models as the current call, so they extend the assumption set
//! with the current pair and treat assumed pairs as matched. Passing an
//! empty set there would recurse forever on, e.g., any model compared with
//! itself at a world with an outgoing edge.

use std::collections::HashMap;

use super::{Answer, BisimKind, Condition, Verdict, WitnessStep};
use crate::frame::{BitSet, Frame, View};
use crate::model::PointedModel;

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Memoize results across calls. Answers are identical to uncached
    /// runs; `calls`, `max_depth` and the witness may differ.
    pub cache: bool,
}

/// Runs the checker of `kind` with default options.
pub fn check(kind: BisimKind, m1: &PointedModel, m2: &PointedModel) -> Verdict {
    check_with(kind, m1, m2, CheckOptions::default())
}

pub fn check_with(
    kind: BisimKind,
    m1: &PointedModel,
    m2: &PointedModel,
    opts: CheckOptions,
) -> Verdict {
    if kind == BisimKind::Modal {
        return super::modal_bisimilar(m1, m2);
    }
    let props: Vec<String> = m1
        .model()
        .propositions()
        .union(m2.model().propositions())
        .cloned()
        .collect();
    let f1 = Frame::new(m1.model(), &props);
    let f2 = Frame::new(m2.model(), &props);
    let w1 = f1.index_of(m1.point()).expect("validated point");
    let w2 = f2.index_of(m2.point()).expect("validated point");
    let mut c = Checker {
        kind,
        f1: &f1,
        f2: &f2,
        props: &props,
        calls: 0,
        max_depth: 0,
        cache: opts.cache.then(Cache::default),
    };
    let assumed = BitSet::empty(f1.worlds.len() * f2.worlds.len());
    let result = c.run(&f1.full_view(), w1, &f2.full_view(), w2, &assumed, 0);
    Verdict {
        answer: Answer::from(result.is_ok()),
        max_depth: c.max_depth,
        calls: c.calls,
        witness: result.err().map(|trace| c.render(trace)),
    }
}

#[derive(Clone, Copy, Debug)]
enum Item {
    Edge1(usize),
    Edge2(usize),
    World1(usize),
    World2(usize),
    Counts(usize, usize),
    Prop(usize),
    Cached,
}

#[derive(Clone, Debug)]
struct RawStep {
    condition: Condition,
    w1: usize,
    w2: usize,
    item: Item,
    v1: View,
    v2: View,
}

/// Failure trace, deepest step first.
type Trace = Vec<RawStep>;

type CacheKey = (View, usize, View, usize);

/// A call's result is a function of its configuration pair and assumption
/// set. Failures hold under any assumptions and successes without
/// assumptions are unconditional; other successes are only reused for the
/// same assumption set.
#[derive(Default)]
struct Cache {
    absolute: HashMap<CacheKey, bool>,
    conditional: HashMap<(CacheKey, BitSet), bool>,
}

struct Checker<'a> {
    kind: BisimKind,
    f1: &'a Frame,
    f2: &'a Frame,
    props: &'a [String],
    calls: u64,
    max_depth: usize,
    cache: Option<Cache>,
}

/// What one side can delete in the current configuration.
#[derive(Clone, Copy)]
enum Deletion {
    Edge(usize),
    World(usize),
}

impl<'a> Checker<'a> {
    fn pair(&self, w1: usize, w2: usize) -> usize {
        w1 * self.f2.worlds.len() + w2
    }

    fn no_assumptions(&self) -> BitSet {
        BitSet::empty(self.f1.worlds.len() * self.f2.worlds.len())
    }

    fn run(
        &mut self,
        v1: &View,
        w1: usize,
        v2: &View,
        w2: usize,
        assumed: &BitSet,
        depth: usize,
    ) -> Result<(), Trace> {
        self.calls += 1;
        self.max_depth = self.max_depth.max(depth);
        let key = self
            .cache
            .as_ref()
            .map(|_| (v1.clone(), w1, v2.clone(), w2));
        if let (Some(cache), Some(key)) = (&self.cache, &key) {
            let hit = cache
                .absolute
                .get(key)
                .or_else(|| cache.conditional.get(&(key.clone(), assumed.clone())));
            match hit {
                Some(true) => return Ok(()),
                Some(false) => {
                    // the full trace was reported where the failure was first found
                    let condition = self.first_condition(v1, w1, v2, w2);
                    return Err(vec![self.step(condition, v1, w1, v2, w2, Item::Cached)]);
                }
                None => {}
            }
        }
        let result = self.body(v1, w1, v2, w2, assumed, depth);
        if let (Some(cache), Some(key)) = (&mut self.cache, key) {
            if result.is_err() || assumed.len() == 0 {
                cache.absolute.insert(key, result.is_ok());
            } else {
                cache.conditional.insert((key, assumed.clone()), true);
            }
        }
        result
    }

    /// Best-effort label for a cached failure.
    fn first_condition(&self, v1: &View, w1: usize, v2: &View, w2: usize) -> Condition {
        if self.kind.deletes_edges() && v1.edges.len() != v2.edges.len() {
            Condition::EdgeCount
        } else if self.kind.deletes_worlds() && v1.worlds.len() != v2.worlds.len() {
            Condition::WorldCount
        } else if self.f1.labels[w1] != self.f2.labels[w2] {
            Condition::Atom
        } else if self.kind.deletes_edges() {
            Condition::ZigSabotage
        } else {
            Condition::ZigRemoval
        }
    }

    fn step(
        &self,
        condition: Condition,
        v1: &View,
        w1: usize,
        v2: &View,
        w2: usize,
        item: Item,
    ) -> RawStep {
        RawStep {
            condition,
            w1,
            w2,
            item,
            v1: v1.clone(),
            v2: v2.clone(),
        }
    }

    fn body(
        &mut self,
        v1: &View,
        w1: usize,
        v2: &View,
        w2: usize,
        assumed: &BitSet,
        depth: usize,
    ) -> Result<(), Trace> {
        let fail = |s: &Self, condition, item, child: Option<Trace>| {
            let mut trace = child.unwrap_or_default();
            trace.push(s.step(condition, v1, w1, v2, w2, item));
            Err(trace)
        };

        if self.kind.deletes_edges() {
            let (n1, n2) = (v1.edges.len(), v2.edges.len());
            if n1 != n2 {
                return fail(self, Condition::EdgeCount, Item::Counts(n1, n2), None);
            }
        } else {
            let (n1, n2) = (v1.worlds.len(), v2.worlds.len());
            if n1 != n2 {
                return fail(self, Condition::WorldCount, Item::Counts(n1, n2), None);
            }
        }

        for p in 0..self.props.len() {
            if self.f1.labels[w1].contains(p) != self.f2.labels[w2].contains(p) {
                return fail(self, Condition::Atom, Item::Prop(p), None);
            }
        }

        let mut with_current = assumed.clone();
        with_current.insert(self.pair(w1, w2));

        let dels1 = self.deletions(v1, w1);
        let dels2 = self.deletions(v2, w2);
        let (zig, zag) = if self.kind.deletes_edges() {
            (Condition::ZigSabotage, Condition::ZagSabotage)
        } else {
            (Condition::ZigRemoval, Condition::ZagRemoval)
        };
        for &d1 in &dels1 {
            let mut first = None;
            let matched = dels2.iter().any(|&d2| {
                match self.try_deletion(v1, w1, d1, v2, w2, d2, &with_current, depth) {
                    Ok(()) => true,
                    Err(t) => {
                        first.get_or_insert(t);
                        false
                    }
                }
            });
            if !matched {
                let item = match d1 {
                    Deletion::Edge(e) => Item::Edge1(e),
                    Deletion::World(u) => Item::World1(u),
                };
                return fail(self, zig, item, first);
            }
        }
        for &d2 in &dels2 {
            let mut first = None;
            let matched = dels1.iter().any(|&d1| {
                match self.try_deletion(v1, w1, d1, v2, w2, d2, &with_current, depth) {
                    Ok(()) => true,
                    Err(t) => {
                        first.get_or_insert(t);
                        false
                    }
                }
            });
            if !matched {
                let item = match d2 {
                    Deletion::Edge(e) => Item::Edge2(e),
                    Deletion::World(u) => Item::World2(u),
                };
                return fail(self, zag, item, first);
            }
        }

        if assumed.contains(self.pair(w1, w2)) {
            return Ok(());
        }
        let succ1: Vec<usize> = v1.successors(self.f1, w1).collect();
        let succ2: Vec<usize> = v2.successors(self.f2, w2).collect();
        for &u1 in &succ1 {
            let mut found = 0;
            let mut first = None;
            for &u2 in &succ2 {
                if assumed.contains(self.pair(u1, u2)) {
                    found += 1;
                    continue;
                }
                match self.run(v1, u1, v2, u2, &with_current, depth + 1) {
                    Ok(()) => found += 1,
                    Err(t) => {
                        first.get_or_insert(t);
                    }
                }
            }
            if found == 0 {
                return fail(self, Condition::ZigModal, Item::World1(u1), first);
            }
        }
        for &u2 in &succ2 {
            let mut found = 0;
            let mut first = None;
            for &u1 in &succ1 {
                if assumed.contains(self.pair(u1, u2)) {
                    found += 1;
                    continue;
                }
                match self.run(v1, u1, v2, u2, &with_current, depth + 1) {
                    Ok(()) => found += 1,
                    Err(t) => {
                        first.get_or_insert(t);
                    }
                }
            }
            if found == 0 {
                return fail(self, Condition::ZagModal, Item::World2(u2), first);
            }
        }
        Ok(())
    }

    fn deletions(&self, v: &View, w: usize) -> Vec<Deletion> {
        if self.kind.deletes_edges() {
            v.edges.iter().map(Deletion::Edge).collect()
        } else {
            v.worlds
                .iter()
                .filter(|&u| u != w)
                .map(Deletion::World)
                .collect()
        }
    }

    /// Side condition (for `g`/`r`) followed by the recursive call on the
    /// models after deleting `d1` and `d2`.
    #[allow(clippy::too_many_arguments)]
    fn try_deletion(
        &mut self,
        v1: &View,
        w1: usize,
        d1: Deletion,
        v2: &View,
        w2: usize,
        d2: Deletion,
        with_current: &BitSet,
        depth: usize,
    ) -> Result<(), Trace> {
        match (d1, d2) {
            (Deletion::Edge(e1), Deletion::Edge(e2)) => {
                if self.kind == BisimKind::G {
                    let (a1, b1) = self.f1.edges[e1];
                    let (a2, b2) = self.f2.edges[e2];
                    self.side(v1, a1, v2, a2, with_current, depth)?;
                    self.side(v1, b1, v2, b2, with_current, depth)?;
                }
                let empty = self.no_assumptions();
                self.run(
                    &v1.without_edge(e1),
                    w1,
                    &v2.without_edge(e2),
                    w2,
                    &empty,
                    depth + 1,
                )
            }
            (Deletion::World(u1), Deletion::World(u2)) => {
                if self.kind == BisimKind::R {
                    self.side(v1, u1, v2, u2, with_current, depth)?;
                }
                let empty = self.no_assumptions();
                let n1 = v1.without_world(self.f1, u1);
                let n2 = v2.without_world(self.f2, u2);
                self.run(&n1, w1, &n2, w2, &empty, depth + 1)
            }
            _ => unreachable!("both sides delete the same kind of item"),
        }
    }

    fn side(
        &mut self,
        v1: &View,
        a1: usize,
        v2: &View,
        a2: usize,
        with_current: &BitSet,
        depth: usize,
    ) -> Result<(), Trace> {
        if with_current.contains(self.pair(a1, a2)) {
            return Ok(());
        }
        self.run(v1, a1, v2, a2, with_current, depth + 1)
    }

    fn render(&self, mut trace: Trace) -> Vec<WitnessStep> {
        trace.reverse();
        trace
            .into_iter()
            .map(|s| {
                let item = match s.item {
                    Item::Cached => None,
                    Item::Edge1(e) => Some(edge_name(self.f1, e)),
                    Item::Edge2(e) => Some(edge_name(self.f2, e)),
                    Item::World1(u) => Some(self.f1.worlds[u].to_string()),
                    Item::World2(u) => Some(self.f2.worlds[u].to_string()),
                    Item::Counts(a, b) => Some(format!("{a} vs {b}")),
                    Item::Prop(p) => Some(self.props[p].clone()),
                };
                WitnessStep {
                    condition: s.condition,
                    left: self.f1.worlds[s.w1].to_string(),
                    right: self.f2.worlds[s.w2].to_string(),
                    item,
                    deleted_left: deleted(self.f1, &s.v1),
                    deleted_right: deleted(self.f2, &s.v2),
                }
            })
            .collect()
    }
}

fn edge_name(f: &Frame, e: usize) -> String {
    let (a, b) = f.edges[e];
    format!("{}->{}", f.worlds[a], f.worlds[b])
}

fn deleted(f: &Frame, v: &View) -> Vec<String> {
    let mut out = v.deleted_worlds(f);
    out.extend(v.deleted_edges(f));
    out
}
