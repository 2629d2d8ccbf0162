//! Finite Kripke models, pointed models, and the two deletion operations.
//!
//! Models keep worlds, edges and propositions in sorted order, and every
//! algorithm in the crate iterates in that order. The JSON form accepted by
//! [`load_model`] is described on [`ModelDoc`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A world identifier. Compared by exact text equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct World(String);

impl World {
    pub fn new(id: impl Into<String>) -> Self {
        World(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for World {
    fn from(s: &str) -> Self {
        World(s.to_owned())
    }
}

/// A directed edge `(source, target)`; serialized as a two-element array.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub World, pub World);

impl Edge {
    pub fn new(source: impl Into<World>, target: impl Into<World>) -> Self {
        Edge(source.into(), target.into())
    }

    pub fn source(&self) -> &World {
        &self.0
    }

    pub fn target(&self) -> &World {
        &self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.0, self.1)
    }
}

/// One broken invariant found by [`ModelDoc::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    NoWorlds,
    EmptyWorldId,
    DuplicateWorld {
        world: String,
    },
    UndeclaredEdgeWorld {
        edge: (String, String),
        world: String,
    },
    DuplicateEdge {
        edge: (String, String),
    },
    EmptyPropositionName,
    DuplicateProposition {
        proposition: String,
    },
    UndeclaredProposition {
        proposition: String,
    },
    UndeclaredValuationWorld {
        proposition: String,
        world: String,
    },
    PointNotDeclared {
        point: String,
    },
}

impl Violation {
    /// Short kebab-case identifier of the violation kind.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::NoWorlds => "no-worlds",
            Violation::EmptyWorldId => "empty-world-id",
            Violation::DuplicateWorld { .. } => "duplicate-world",
            Violation::UndeclaredEdgeWorld { .. } => "undeclared-world",
            Violation::DuplicateEdge { .. } => "duplicate-edge",
            Violation::EmptyPropositionName => "empty-proposition-name",
            Violation::DuplicateProposition { .. } => "duplicate-proposition",
            Violation::UndeclaredProposition { .. } => "undeclared-proposition",
            Violation::UndeclaredValuationWorld { .. } => "undeclared-world",
            Violation::PointNotDeclared { .. } => "point-not-declared",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoWorlds => write!(f, "worlds: model has no worlds"),
            Violation::EmptyWorldId => write!(f, "worlds: empty world id"),
            Violation::DuplicateWorld { world } => write!(f, "worlds: duplicate world `{world}`"),
            Violation::UndeclaredEdgeWorld { edge, world } => write!(
                f,
                "edges: edge [{}, {}] references undeclared world `{world}`",
                edge.0, edge.1
            ),
            Violation::DuplicateEdge { edge } => {
                write!(f, "edges: duplicate edge [{}, {}]", edge.0, edge.1)
            }
            Violation::EmptyPropositionName => write!(f, "propositions: empty proposition name"),
            Violation::DuplicateProposition { proposition } => {
                write!(f, "propositions: duplicate proposition `{proposition}`")
            }
            Violation::UndeclaredProposition { proposition } => {
                write!(f, "valuation: undeclared proposition `{proposition}`")
            }
            Violation::UndeclaredValuationWorld { proposition, world } => write!(
                f,
                "valuation: `{proposition}` references undeclared world `{world}`"
            ),
            Violation::PointNotDeclared { point } => {
                write!(f, "point: `{point}` is not a declared world")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("edge {0} is not in the model")]
    EdgeNotPresent(Edge),
    #[error("world `{0}` is not in the model")]
    WorldNotPresent(World),
    #[error("cannot delete `{0}`: it is the last world of the model")]
    LastWorld(World),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// The on-disk JSON form of a pointed model.
///
/// ```json
/// {"worlds":["w"],"edges":[["w","w"]],"propositions":["p"],"valuation":{"p":["w"]},"point":"w"}
/// ```
///
/// Unknown keys are rejected. A document may be structurally well-formed yet
/// still break model invariants; [`ModelDoc::validate`] lists those.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub worlds: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub propositions: Vec<String>,
    pub valuation: BTreeMap<String, Vec<String>>,
    pub point: String,
}

impl ModelDoc {
    /// Every broken model/pointed-model invariant, in field order. Empty iff
    /// the document describes a valid pointed model.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.worlds.is_empty() {
            out.push(Violation::NoWorlds);
        }
        let mut worlds = BTreeSet::new();
        for w in &self.worlds {
            if w.is_empty() {
                out.push(Violation::EmptyWorldId);
            } else if !worlds.insert(w.as_str()) {
                out.push(Violation::DuplicateWorld { world: w.clone() });
            }
        }
        let mut edges = BTreeSet::new();
        for (u, v) in &self.edges {
            for end in [u, v] {
                if !worlds.contains(end.as_str()) {
                    out.push(Violation::UndeclaredEdgeWorld {
                        edge: (u.clone(), v.clone()),
                        world: end.clone(),
                    });
                }
            }
            if !edges.insert((u, v)) {
                out.push(Violation::DuplicateEdge {
                    edge: (u.clone(), v.clone()),
                });
            }
        }
        let mut props = BTreeSet::new();
        for p in &self.propositions {
            if p.is_empty() {
                out.push(Violation::EmptyPropositionName);
            } else if !props.insert(p.as_str()) {
                out.push(Violation::DuplicateProposition {
                    proposition: p.clone(),
                });
            }
        }
        for (p, ws) in &self.valuation {
            if !props.contains(p.as_str()) {
                out.push(Violation::UndeclaredProposition {
                    proposition: p.clone(),
                });
            }
            for w in ws {
                if !worlds.contains(w.as_str()) {
                    out.push(Violation::UndeclaredValuationWorld {
                        proposition: p.clone(),
                        world: w.clone(),
                    });
                }
            }
        }
        if !worlds.contains(self.point.as_str()) {
            out.push(Violation::PointNotDeclared {
                point: self.point.clone(),
            });
        }
        out
    }

    pub fn into_pointed(self) -> Result<PointedModel, ModelError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(ModelError::Invalid(violations));
        }
        let mut valuation: BTreeMap<String, BTreeSet<World>> = self
            .propositions
            .iter()
            .map(|p| (p.clone(), BTreeSet::new()))
            .collect();
        for (p, ws) in self.valuation {
            valuation
                .entry(p)
                .or_default()
                .extend(ws.into_iter().map(World));
        }
        let model = KripkeModel {
            worlds: self.worlds.into_iter().map(World).collect(),
            edges: self
                .edges
                .into_iter()
                .map(|(u, v)| Edge(World(u), World(v)))
                .collect(),
            propositions: self.propositions.into_iter().collect(),
            valuation,
        };
        Ok(PointedModel {
            model,
            point: World(self.point),
        })
    }
}

impl From<&PointedModel> for ModelDoc {
    fn from(pm: &PointedModel) -> Self {
        let m = &pm.model;
        ModelDoc {
            worlds: m.worlds.iter().map(|w| w.0.clone()).collect(),
            edges: m
                .edges
                .iter()
                .map(|e| (e.0 .0.clone(), e.1 .0.clone()))
                .collect(),
            propositions: m.propositions.iter().cloned().collect(),
            valuation: m
                .valuation
                .iter()
                .map(|(p, ws)| (p.clone(), ws.iter().map(|w| w.0.clone()).collect()))
                .collect(),
            point: pm.point.0.clone(),
        }
    }
}

/// A finite relational model `(W, R, V)`.
///
/// Invariants (enforced by every constructor): `W` is non-empty, edge
/// endpoints and valuation worlds are declared, and every proposition in the
/// valuation is declared. Declared propositions absent from a valuation are
/// false everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KripkeModel {
    worlds: BTreeSet<World>,
    edges: BTreeSet<Edge>,
    propositions: BTreeSet<String>,
    valuation: BTreeMap<String, BTreeSet<World>>,
}

impl KripkeModel {
    /// Builds a model from parts, validating all invariants.
    pub fn new<W, E, P, V>(
        worlds: W,
        edges: E,
        propositions: P,
        valuation: V,
    ) -> Result<Self, ModelError>
    where
        W: IntoIterator,
        W::Item: Into<String>,
        E: IntoIterator<Item = (W::Item, W::Item)>,
        P: IntoIterator,
        P::Item: Into<String>,
        V: IntoIterator<Item = (P::Item, Vec<W::Item>)>,
    {
        let worlds: Vec<String> = worlds.into_iter().map(Into::into).collect();
        let point = worlds.first().cloned().unwrap_or_default();
        let doc = ModelDoc {
            worlds,
            edges: edges
                .into_iter()
                .map(|(u, v)| (u.into(), v.into()))
                .collect(),
            propositions: propositions.into_iter().map(Into::into).collect(),
            valuation: valuation
                .into_iter()
                .map(|(p, ws)| (p.into(), ws.into_iter().map(Into::into).collect()))
                .collect(),
            point,
        };
        Ok(doc.into_pointed()?.model)
    }

    pub fn worlds(&self) -> &BTreeSet<World> {
        &self.worlds
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn propositions(&self) -> &BTreeSet<String> {
        &self.propositions
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<World>> {
        &self.valuation
    }

    pub fn has_world(&self, w: &World) -> bool {
        self.worlds.contains(w)
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Whether `p` holds at `w`; undeclared propositions are false.
    pub fn holds(&self, p: &str, w: &World) -> bool {
        self.valuation.get(p).is_some_and(|ws| ws.contains(w))
    }

    /// Successors of `w` in canonical order.
    pub fn successors<'a>(&'a self, w: &'a World) -> impl Iterator<Item = &'a World> + 'a {
        self.edges.iter().filter(move |e| &e.0 == w).map(|e| &e.1)
    }

    /// Removes one edge, leaving worlds and valuation untouched.
    pub fn delete_edge(&self, e: &Edge) -> Result<KripkeModel, ModelError> {
        if !self.edges.contains(e) {
            return Err(ModelError::EdgeNotPresent(e.clone()));
        }
        let mut out = self.clone();
        out.edges.remove(e);
        Ok(out)
    }

    /// Removes a world together with its incident edges and its valuation
    /// entries. Refuses to empty the model.
    pub fn delete_point(&self, v: &World) -> Result<KripkeModel, ModelError> {
        if !self.worlds.contains(v) {
            return Err(ModelError::WorldNotPresent(v.clone()));
        }
        if self.worlds.len() == 1 {
            return Err(ModelError::LastWorld(v.clone()));
        }
        let mut out = self.clone();
        out.worlds.remove(v);
        out.edges.retain(|e| &e.0 != v && &e.1 != v);
        for ws in out.valuation.values_mut() {
            ws.remove(v);
        }
        Ok(out)
    }

    /// Adds an edge between declared worlds. Used by generators and tests.
    pub fn add_edge(&self, e: Edge) -> Result<KripkeModel, ModelError> {
        for end in [&e.0, &e.1] {
            if !self.worlds.contains(end) {
                return Err(ModelError::WorldNotPresent(end.clone()));
            }
        }
        let mut out = self.clone();
        out.edges.insert(e);
        Ok(out)
    }

    /// Same model with extra propositions declared (false everywhere unless
    /// given a valuation) and extra valuation entries. Worlds must exist.
    pub(crate) fn with_extra_valuation(
        &self,
        extra: impl IntoIterator<Item = (String, BTreeSet<World>)>,
    ) -> KripkeModel {
        let mut out = self.clone();
        for (p, ws) in extra {
            debug_assert!(ws.iter().all(|w| out.worlds.contains(w)));
            out.propositions.insert(p.clone());
            out.valuation.entry(p).or_default().extend(ws);
        }
        out
    }

    /// Builds a model from already-checked parts. Callers guarantee every
    /// invariant holds.
    pub(crate) fn from_parts_unchecked(
        worlds: BTreeSet<World>,
        edges: BTreeSet<Edge>,
        propositions: BTreeSet<String>,
        mut valuation: BTreeMap<String, BTreeSet<World>>,
    ) -> KripkeModel {
        for p in &propositions {
            valuation.entry(p.clone()).or_default();
        }
        KripkeModel {
            worlds,
            edges,
            propositions,
            valuation,
        }
    }

    pub fn point_at(self, point: World) -> Result<PointedModel, ModelError> {
        PointedModel::new(self, point)
    }
}

/// A Kripke model with a designated world.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedModel {
    model: KripkeModel,
    point: World,
}

impl PointedModel {
    pub fn new(model: KripkeModel, point: World) -> Result<Self, ModelError> {
        if !model.has_world(&point) {
            return Err(ModelError::Invalid(vec![Violation::PointNotDeclared {
                point: point.0,
            }]));
        }
        Ok(PointedModel { model, point })
    }

    pub fn model(&self) -> &KripkeModel {
        &self.model
    }

    pub fn point(&self) -> &World {
        &self.point
    }

    pub fn into_parts(self) -> (KripkeModel, World) {
        (self.model, self.point)
    }

    /// Same model, different designated world.
    pub fn repoint(&self, point: &World) -> Result<PointedModel, ModelError> {
        PointedModel::new(self.model.clone(), point.clone())
    }

    /// Invariant check on an already-built value; empty for anything this
    /// crate constructed.
    pub fn validate(&self) -> Vec<Violation> {
        ModelDoc::from(self).validate()
    }
}

/// Parses and validates the JSON model format.
pub fn load_model(text: &str) -> Result<PointedModel, ModelError> {
    let doc: ModelDoc = serde_json::from_str(text)?;
    doc.into_pointed()
}

/// Canonical single-line JSON; `load_model(&save_model(m)) == m`.
pub fn save_model(m: &PointedModel) -> String {
    serde_json::to_string(&ModelDoc::from(m)).expect("model document always serializes")
}

/// Invariant violations of a JSON document, or a single parse error.
pub fn validate_text(text: &str) -> Result<Vec<Violation>, ModelError> {
    let doc: ModelDoc = serde_json::from_str(text)?;
    Ok(doc.validate())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> KripkeModel {
        KripkeModel::new(
            ["u", "v"],
            [("u", "v"), ("v", "u")],
            ["p"],
            [("p", vec!["u", "v"])],
        )
        .unwrap()
    }

    #[test]
    fn delete_edge_keeps_worlds_and_valuation() {
        let m = two_cycle();
        let d = m.delete_edge(&Edge::new("u", "v")).unwrap();
        assert_eq!(d.edges().iter().collect::<Vec<_>>(), [&Edge::new("v", "u")]);
        assert_eq!(d.worlds(), m.worlds());
        assert_eq!(d.valuation(), m.valuation());
        assert_eq!(m.edges().len(), 2, "input unchanged");
    }

    #[test]
    fn delete_only_self_loop() {
        let m = KripkeModel::new(["w"], [("w", "w")], Vec::<&str>::new(), []).unwrap();
        let d = m.delete_edge(&Edge::new("w", "w")).unwrap();
        assert!(d.edges().is_empty());
        assert!(d.has_world(&"w".into()));
    }

    #[test]
    fn delete_missing_edge_is_error() {
        let m = KripkeModel::new(["w"], [], Vec::<&str>::new(), []).unwrap();
        assert!(matches!(
            m.delete_edge(&Edge::new("w", "w")),
            Err(ModelError::EdgeNotPresent(_))
        ));
    }

    #[test]
    fn delete_point_drops_incident_edges_and_valuation() {
        let m = two_cycle();
        let d = m.delete_point(&"v".into()).unwrap();
        assert_eq!(d.worlds().len(), 1);
        assert!(d.edges().is_empty());
        assert_eq!(d.valuation()["p"], BTreeSet::from([World::from("u")]));
    }

    #[test]
    fn delete_point_in_triangle() {
        let m = KripkeModel::new(
            ["a", "b", "c"],
            [("a", "b"), ("b", "c"), ("c", "a")],
            Vec::<&str>::new(),
            [],
        )
        .unwrap();
        let d = m.delete_point(&"b".into()).unwrap();
        assert_eq!(
            d.worlds().iter().map(World::as_str).collect::<Vec<_>>(),
            ["a", "c"]
        );
        assert_eq!(d.edges().iter().collect::<Vec<_>>(), [&Edge::new("c", "a")]);
    }

    #[test]
    fn delete_point_errors() {
        let m = KripkeModel::new(["w"], [], Vec::<&str>::new(), []).unwrap();
        assert!(matches!(
            m.delete_point(&"w".into()),
            Err(ModelError::LastWorld(_))
        ));
        assert!(matches!(
            m.delete_point(&"x".into()),
            Err(ModelError::WorldNotPresent(_))
        ));
    }

    #[test]
    fn load_self_loop() {
        let text = r#"{"worlds":["w"],"edges":[["w","w"]],"propositions":["p"],"valuation":{"p":["w"]},"point":"w"}"#;
        let pm = load_model(text).unwrap();
        assert_eq!(pm.point().as_str(), "w");
        assert!(pm.model().has_edge(&Edge::new("w", "w")));
        assert!(pm.model().holds("p", &"w".into()));
        assert_eq!(save_model(&pm), text);
    }

    #[test]
    fn load_rejects_undeclared_edge_world() {
        let text =
            r#"{"worlds":["w"],"edges":[["w","x"]],"propositions":[],"valuation":{},"point":"w"}"#;
        match load_model(text) {
            Err(ModelError::Invalid(v)) => assert_eq!(v[0].code(), "undeclared-world"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn load_rejects_duplicate_edge() {
        let text = r#"{"worlds":["w"],"edges":[["w","w"],["w","w"]],"propositions":[],"valuation":{},"point":"w"}"#;
        match load_model(text) {
            Err(ModelError::Invalid(v)) => assert_eq!(v[0].code(), "duplicate-edge"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn load_rejects_unknown_keys() {
        let text =
            r#"{"worlds":["w"],"edges":[],"propositions":[],"valuation":{},"point":"w","extra":1}"#;
        assert!(matches!(load_model(text), Err(ModelError::Json(_))));
    }

    #[test]
    fn validate_examples() {
        let ok = r#"{"worlds":["w"],"edges":[["w","w"]],"propositions":["p"],"valuation":{"p":["w"]},"point":"w"}"#;
        assert!(validate_text(ok).unwrap().is_empty());
        let bad_point =
            r#"{"worlds":["w"],"edges":[],"propositions":[],"valuation":{},"point":"x"}"#;
        let v = validate_text(bad_point).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].code(), "point-not-declared");
        let bad_prop = r#"{"worlds":["w"],"edges":[],"propositions":["p"],"valuation":{"q":["w"]},"point":"w"}"#;
        let v = validate_text(bad_prop).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].code(), "undeclared-proposition");
    }

    #[test]
    fn missing_valuation_entry_is_false_everywhere() {
        let text = r#"{"worlds":["w"],"edges":[],"propositions":["p"],"valuation":{},"point":"w"}"#;
        let pm = load_model(text).unwrap();
        assert!(!pm.model().holds("p", &"w".into()));
        assert!(save_model(&pm).contains(r#""valuation":{"p":[]}"#));
    }
}
