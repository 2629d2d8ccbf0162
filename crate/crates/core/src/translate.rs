//! Model translations between the two deletion styles.
//!
//! [`translate_f`] subdivides every edge `(w, v)` with a fresh world marked
//! by the proposition `i`, so that cutting the link corresponds to deleting
//! that world. [`translate_g`] adds a sink world `w_j` marked by `j`, meant
//! to be linked from every original world so that deleting a world
//! corresponds to cutting its link to the sink.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{Edge, KripkeModel, PointedModel, World};

/// Proposition marking the edge worlds added by [`translate_f`].
pub const EDGE_PROP: &str = "i";
/// Proposition marking the sink world added by [`translate_g`].
pub const SINK_PROP: &str = "j";
/// Id of the sink world added by [`translate_g`].
pub const SINK_WORLD: &str = "w_j";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("proposition `{0}` is already declared by the model")]
    PropositionClash(String),
    #[error("generated world id `{0}` collides with another world")]
    WorldClash(String),
}

/// How [`translate_g`] links original worlds to the sink.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SinkEdges {
    /// `R = {(u, v) | u Rj v and v Rj w_j}` with `Rj = R ∪ W×{w_j}`,
    /// computed literally. Since `w_j` has no successors this equals `R` and
    /// the sink stays unreachable.
    #[default]
    Literal,
    /// `R = Rj`: keep every link into the sink.
    Intent,
}

impl fmt::Display for SinkEdges {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SinkEdges::Literal => "literal",
            SinkEdges::Intent => "intent",
        })
    }
}

impl FromStr for SinkEdges {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(SinkEdges::Literal),
            "intent" => Ok(SinkEdges::Intent),
            other => Err(format!(
                "unknown sink-edge mode `{other}` (expected literal or intent)"
            )),
        }
    }
}

/// Id of the world that subdivides `e`: `<src>·<dst>·i`.
pub fn edge_world(e: &Edge) -> World {
    World::new(format!("{}·{}·{EDGE_PROP}", e.0, e.1))
}

/// Replaces each edge `(w, v)` by `w -> e -> v` through a fresh world `e`
/// where `i` holds. Original worlds keep their valuation; `i` is false on
/// them.
pub fn translate_f(m: &KripkeModel) -> Result<KripkeModel, TranslateError> {
    if m.propositions().contains(EDGE_PROP) {
        return Err(TranslateError::PropositionClash(EDGE_PROP.into()));
    }
    let mut worlds = m.worlds().clone();
    let mut edges = BTreeSet::new();
    let mut marked = BTreeSet::new();
    for e in m.edges() {
        let x = edge_world(e);
        if !worlds.insert(x.clone()) {
            return Err(TranslateError::WorldClash(x.to_string()));
        }
        edges.insert(Edge(e.0.clone(), x.clone()));
        edges.insert(Edge(x.clone(), e.1.clone()));
        marked.insert(x);
    }
    let mut props = m.propositions().clone();
    props.insert(EDGE_PROP.into());
    let mut valuation: BTreeMap<String, BTreeSet<World>> = m.valuation().clone();
    valuation.insert(EDGE_PROP.into(), marked);
    Ok(KripkeModel::from_parts_unchecked(
        worlds, edges, props, valuation,
    ))
}

/// Adds the sink world `w_j` (where only `j` holds) and, depending on
/// `mode`, the links into it.
pub fn translate_g(m: &KripkeModel, mode: SinkEdges) -> Result<KripkeModel, TranslateError> {
    if m.propositions().contains(SINK_PROP) {
        return Err(TranslateError::PropositionClash(SINK_PROP.into()));
    }
    let sink = World::new(SINK_WORLD);
    if m.has_world(&sink) {
        return Err(TranslateError::WorldClash(SINK_WORLD.into()));
    }
    let mut linked: BTreeSet<Edge> = m.edges().clone();
    linked.extend(m.worlds().iter().map(|w| Edge(w.clone(), sink.clone())));
    let edges: BTreeSet<Edge> = match mode {
        SinkEdges::Intent => linked,
        SinkEdges::Literal => {
            let reaches_sink = |v: &World| linked.contains(&Edge(v.clone(), sink.clone()));
            linked
                .iter()
                .filter(|e| reaches_sink(&e.1))
                .cloned()
                .collect()
        }
    };
    let mut worlds = m.worlds().clone();
    worlds.insert(sink.clone());
    let mut props = m.propositions().clone();
    props.insert(SINK_PROP.into());
    let mut valuation = m.valuation().clone();
    valuation.insert(SINK_PROP.into(), BTreeSet::from([sink]));
    Ok(KripkeModel::from_parts_unchecked(
        worlds, edges, props, valuation,
    ))
}

/// [`translate_f`] keeping the point.
pub fn translate_f_pointed(m: &PointedModel) -> Result<PointedModel, TranslateError> {
    let model = translate_f(m.model())?;
    Ok(PointedModel::new(model, m.point().clone()).expect("original worlds survive"))
}

/// [`translate_g`] keeping the point.
pub fn translate_g_pointed(
    m: &PointedModel,
    mode: SinkEdges,
) -> Result<PointedModel, TranslateError> {
    let model = translate_g(m.model(), mode)?;
    Ok(PointedModel::new(model, m.point().clone()).expect("original worlds survive"))
}
