//! Exploratory comparison between the two deletion styles through the model
//! translations.
//!
//! For each seeded pair the base notion is decided on the original models
//! and several candidate notions are decided on the translated models. A
//! candidate that always agrees with its base would support the reduction.
//! Nothing here asserts agreement; the output is a report.

use std::fmt::Write as _;

use crate::bisim::{
    oracle_bisimilar_with, random_pair, BisimKind, DeletionFilter, OracleError, OracleGuard,
};
use crate::model::PointedModel;
use crate::translate::{translate_f_pointed, translate_g_pointed, SinkEdges, EDGE_PROP, SINK_PROP};

/// Sample shape used by the experiment.
pub const MAX_WORLDS: usize = 3;
pub const MAX_EDGES: usize = 3;

/// Guard for the oracle on translated models (`translate_f` on three edges
/// gives six worlds and six edges).
const TRANSLATED_GUARD: OracleGuard = OracleGuard {
    max_worlds: 8,
    max_edges: 8,
};

/// Confusion counts of a candidate against its base notion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub both_yes: usize,
    pub both_no: usize,
    /// Base yes, candidate no.
    pub base_only: usize,
    /// Base no, candidate yes.
    pub candidate_only: usize,
}

impl Tally {
    pub fn agree(&self) -> usize {
        self.both_yes + self.both_no
    }

    pub fn total(&self) -> usize {
        self.agree() + self.base_only + self.candidate_only
    }

    fn record(&mut self, base: bool, candidate: bool) {
        match (base, candidate) {
            (true, true) => self.both_yes += 1,
            (false, false) => self.both_no += 1,
            (true, false) => self.base_only += 1,
            (false, true) => self.candidate_only += 1,
        }
    }
}

/// One way of deciding the base question on translated models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub translation: &'static str,
    pub kind: BisimKind,
    pub restriction: &'static str,
    pub tally: Tally,
    /// First pair (by sample index) where the candidate disagrees.
    pub first_disagreement: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub title: &'static str,
    pub base: BisimKind,
    pub base_yes: usize,
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub seed: u64,
    pub count: u64,
    pub sections: Vec<Section>,
}

struct Probe {
    translation: &'static str,
    kind: BisimKind,
    restriction: &'static str,
    filter: DeletionFilter,
    mode: Option<SinkEdges>,
}

fn only_worlds_with(p: &str) -> DeletionFilter {
    DeletionFilter {
        worlds_with: Some(p.into()),
        edges_into: None,
    }
}

fn only_edges_into(p: &str) -> DeletionFilter {
    DeletionFilter {
        worlds_with: None,
        edges_into: Some(p.into()),
    }
}

fn f_probes(kinds: &[(BisimKind, bool)]) -> Vec<Probe> {
    kinds
        .iter()
        .map(|&(kind, restricted)| Probe {
            translation: "F",
            kind,
            restriction: if restricted { "i-worlds only" } else { "none" },
            filter: if restricted {
                only_worlds_with(EDGE_PROP)
            } else {
                DeletionFilter::default()
            },
            mode: None,
        })
        .collect()
}

fn g_probes(kinds: &[(BisimKind, bool)]) -> Vec<Probe> {
    let mut out = Vec::new();
    for (translation, mode) in [
        ("G literal", SinkEdges::Literal),
        ("G intent", SinkEdges::Intent),
    ] {
        for &(kind, restricted) in kinds {
            let (restriction, filter) = if restricted {
                ("edges into j only", only_edges_into(SINK_PROP))
            } else {
                ("none", DeletionFilter::default())
            };
            out.push(Probe {
                translation,
                kind,
                restriction,
                filter,
                mode: Some(mode),
            });
        }
    }
    out
}

fn run_section(
    title: &'static str,
    base: BisimKind,
    probes: Vec<Probe>,
    pairs: &[(PointedModel, PointedModel)],
    seed: u64,
) -> Result<Section, OracleError> {
    let mut candidates: Vec<Candidate> = probes
        .iter()
        .map(|s| Candidate {
            translation: s.translation,
            kind: s.kind,
            restriction: s.restriction,
            tally: Tally::default(),
            first_disagreement: None,
        })
        .collect();
    let mut base_yes = 0;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let expected = oracle_bisimilar_with(
            base,
            a,
            b,
            OracleGuard::default(),
            &DeletionFilter::default(),
        )?
        .is_yes();
        base_yes += usize::from(expected);
        for (probe, cand) in probes.iter().zip(candidates.iter_mut()) {
            let (ta, tb) = match probe.mode {
                None => (translate_f_pointed(a), translate_f_pointed(b)),
                Some(mode) => (translate_g_pointed(a, mode), translate_g_pointed(b, mode)),
            };
            let (ta, tb) = (
                ta.expect("sample avoids reserved names"),
                tb.expect("sample avoids reserved names"),
            );
            let got = oracle_bisimilar_with(probe.kind, &ta, &tb, TRANSLATED_GUARD, &probe.filter)?
                .is_yes();
            cand.tally.record(expected, got);
            if expected != got && cand.first_disagreement.is_none() {
                cand.first_disagreement = Some(seed + i as u64);
            }
        }
    }
    Ok(Section {
        title,
        base,
        base_yes,
        candidates,
    })
}

/// Runs the experiment on `random_pair(seed + k, 3, 3, ["p"])` for
/// `k < count`.
pub fn run_correspondence(seed: u64, count: u64) -> Result<CorrespondenceReport, OracleError> {
    let pool = vec!["p".to_string()];
    let pairs: Vec<_> = (0..count)
        .map(|k| random_pair(seed + k, MAX_WORLDS, MAX_EDGES, &pool))
        .collect();
    use BisimKind::{D, G, R, S};
    let sections = vec![
        run_section(
            "Edge deletion via F",
            S,
            f_probes(&[(R, true), (D, true), (R, false), (D, false)]),
            &pairs,
            seed,
        )?,
        run_section(
            "Generalized edge deletion via F",
            G,
            f_probes(&[(R, true), (D, true)]),
            &pairs,
            seed,
        )?,
        run_section(
            "Point deletion via G",
            D,
            g_probes(&[(S, true), (G, true), (S, false)]),
            &pairs,
            seed,
        )?,
        run_section(
            "Generalized point deletion via G",
            R,
            g_probes(&[(G, true), (S, true)]),
            &pairs,
            seed,
        )?,
    ];
    Ok(CorrespondenceReport {
        seed,
        count,
        sections,
    })
}

impl CorrespondenceReport {
    /// Markdown rendering; deterministic for fixed seed and count.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Translation correspondence\n\n");
        let _ = writeln!(
            out,
            "Generated by `sabbis correspond --seed {} --count {}`. Pairs come from \
             `random_pair(seed + k, {MAX_WORLDS}, {MAX_EDGES}, [\"p\"])`; every verdict is \
             computed by the fixpoint oracle.\n",
            self.seed, self.count
        );
        out.push_str(
            "Columns: `agree` = same verdict; `base only` = base yes, candidate no; \
             `cand only` = base no, candidate yes; `first seed` = first disagreeing pair.\n",
        );
        for section in &self.sections {
            let _ = writeln!(
                out,
                "\n## {} (base: {} on the originals)\n",
                section.title, section.base
            );
            let _ = writeln!(out, "Base yes: {} of {}.\n", section.base_yes, self.count);
            out.push_str(
                "| translation | kind | deletions | agree | base only | cand only | first seed |\n",
            );
            out.push_str("|---|---|---|---|---|---|---|\n");
            for c in &section.candidates {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {}/{} | {} | {} | {} |",
                    c.translation,
                    c.kind,
                    c.restriction,
                    c.tally.agree(),
                    c.tally.total(),
                    c.tally.base_only,
                    c.tally.candidate_only,
                    c.first_disagreement
                        .map_or_else(|| "-".to_string(), |s| s.to_string()),
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_deterministic_and_complete() {
        let a = run_correspondence(5, 10).unwrap();
        let b = run_correspondence(5, 10).unwrap();
        assert_eq!(a, b);
        let sizes: Vec<usize> = a.sections.iter().map(|s| s.candidates.len()).collect();
        assert_eq!(sizes, [4, 2, 6, 4]);
        for c in a.sections.iter().flat_map(|s| &s.candidates) {
            assert_eq!(c.tally.total(), 10);
        }
        assert_eq!(a.to_markdown(), b.to_markdown());
    }
}
