//! Bisimilarity checkers.
//!
//! Five notions are supported, see [`BisimKind`]. The four deletion kinds
//! are decided by a recursive search over pairs of worlds that threads a set
//! of assumed pairs through modal steps and restarts it after every
//! deletion. [`oracle_bisimilar`] decides the same questions by computing a
//! greatest fixpoint over all reachable configuration pairs and is used to
//! cross-check the recursive search.

mod checker;
mod modal;
mod oracle;
mod random;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use checker::{check, check_with, CheckOptions};
pub use modal::modal_bisimilar;
pub use oracle::{
    oracle_bisimilar, oracle_bisimilar_with, DeletionFilter, OracleError, OracleGuard,
};
pub use random::{random_model, random_pair};

use crate::model::PointedModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BisimKind {
    /// Plain modal bisimulation (atoms, Zig, Zag).
    Modal,
    /// Sabotage: edge deletions must be matched by edge deletions.
    S,
    /// Point sabotage: deletions of non-current worlds must be matched.
    D,
    /// Generalized sabotage: matched edges also need bisimilar endpoints.
    G,
    /// Generalized point sabotage: matched deleted worlds must be bisimilar.
    R,
}

impl BisimKind {
    pub const ALL: [BisimKind; 5] = [
        BisimKind::Modal,
        BisimKind::S,
        BisimKind::D,
        BisimKind::G,
        BisimKind::R,
    ];
    pub const DELETION: [BisimKind; 4] = [BisimKind::S, BisimKind::D, BisimKind::G, BisimKind::R];

    pub fn as_str(self) -> &'static str {
        match self {
            BisimKind::Modal => "modal",
            BisimKind::S => "s",
            BisimKind::D => "d",
            BisimKind::G => "g",
            BisimKind::R => "r",
        }
    }

    /// Deletes edges (as opposed to worlds).
    pub fn deletes_edges(self) -> bool {
        matches!(self, BisimKind::S | BisimKind::G)
    }

    /// Deletes worlds.
    pub fn deletes_worlds(self) -> bool {
        matches!(self, BisimKind::D | BisimKind::R)
    }

    /// The kind whose deletion clauses this one strengthens, if any.
    pub fn refines(self) -> Option<BisimKind> {
        match self {
            BisimKind::G => Some(BisimKind::S),
            BisimKind::R => Some(BisimKind::D),
            BisimKind::S | BisimKind::D => Some(BisimKind::Modal),
            BisimKind::Modal => None,
        }
    }
}

impl fmt::Display for BisimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BisimKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BisimKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                format!("unknown bisimulation kind `{s}` (expected modal, s, d, g or r)")
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        })
    }
}

/// Which clause of a bisimulation failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    EdgeCount,
    WorldCount,
    Atom,
    ZigSabotage,
    ZagSabotage,
    ZigRemoval,
    ZagRemoval,
    ZigModal,
    ZagModal,
}

/// One link of a failure trace: at pair (`left`, `right`) of the models
/// reached after deleting `deleted_left` / `deleted_right`, `condition`
/// fails for `item` (an edge or world of the side the clause starts from).
/// The next step, if any, explains why the first candidate answer to
/// `item` was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    pub condition: Condition,
    pub left: String,
    pub right: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item: Option<String>,
    pub deleted_left: Vec<String>,
    pub deleted_right: Vec<String>,
}

/// Result of a bisimilarity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    /// Deepest recursive call, counting the initial call as depth 0.
    pub max_depth: usize,
    pub calls: u64,
    /// On `no`, the chain of failed clauses along the first failing branch.
    pub witness: Option<Vec<WitnessStep>>,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer.is_yes()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict always serializes")
    }
}

/// Recursive sabotage check (edge deletion).
pub fn s_bisimilar(m1: &PointedModel, m2: &PointedModel) -> Verdict {
    check(BisimKind::S, m1, m2)
}

/// Recursive point-sabotage check (deletion of non-current worlds).
pub fn d_bisimilar(m1: &PointedModel, m2: &PointedModel) -> Verdict {
    check(BisimKind::D, m1, m2)
}

/// Recursive generalized sabotage check.
pub fn g_bisimilar(m1: &PointedModel, m2: &PointedModel) -> Verdict {
    check(BisimKind::G, m1, m2)
}

/// Recursive generalized point-sabotage check.
pub fn r_bisimilar(m1: &PointedModel, m2: &PointedModel) -> Verdict {
    check(BisimKind::R, m1, m2)
}

/// The recursion-depth bound stated for the recursive checker of `kind`:
/// `|R1|·|W1|·|W2|` for `s` and `|W1|²·|W2|` for `d`. Other kinds have no
/// stated bound.
pub fn stated_depth_bound(kind: BisimKind, m1: &PointedModel, m2: &PointedModel) -> Option<usize> {
    let (w1, w2) = (m1.model().worlds().len(), m2.model().worlds().len());
    match kind {
        BisimKind::S => Some(m1.model().edges().len() * w1 * w2),
        BisimKind::D => Some(w1 * w1 * w2),
        _ => None,
    }
}

/// A depth bound that the recursive checkers provably respect for `s` and
/// `d`. Along modal steps the assumed-pair set grows by one pair per level,
/// but a step may revisit the pair just assumed (a self-loop on both sides),
/// which costs one more level before the search stops. Each deletion level
/// therefore spends at most `|W1|·|W2| + 1` modal levels.
pub fn proven_depth_bound(kind: BisimKind, m1: &PointedModel, m2: &PointedModel) -> Option<usize> {
    let (w1, w2) = (m1.model().worlds().len(), m2.model().worlds().len());
    let per_model = w1 * w2 + 1;
    match kind {
        BisimKind::S => Some((m1.model().edges().len() + 1) * per_model - 1),
        BisimKind::D => Some(w1 * per_model - 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for k in BisimKind::ALL {
            assert_eq!(k.as_str().parse::<BisimKind>(), Ok(k));
        }
        assert!("x".parse::<BisimKind>().is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict {
            answer: Answer::Yes,
            max_depth: 2,
            calls: 5,
            witness: None,
        };
        assert_eq!(
            v.to_json(),
            r#"{"answer":"yes","max_depth":2,"calls":5,"witness":null}"#
        );
    }
}
