//! Characteristic formulas for the four deletion bisimulations.
//!
//! Every world `x` of the source model gets a fresh atom `p_x` (printed
//! `@x`). `E(M)` says that wherever `p_x` holds, the atoms of `x` hold and the
//! successors are exactly covered by the fresh atoms of `x`'s successors.
//! The characteristic formula of `M` for a kind then states, for every
//! length `k` of deletion sequences, that each sequence can be mimicked
//! (`E` of the model after that sequence holds after some `k` deletions) and
//! that every `k` deletions lead to a model satisfying `E` after some
//! sequence, and finally that no more deletions than `M` allows are
//! possible.
//!
//! | kind | deletes | guards                               | terminal        |
//! |------|---------|--------------------------------------|-----------------|
//! | `s`  | edges   | none                                 | `~sab^(n+1) true`, n = edges |
//! | `g`  | edges   | `sab{@u|@v}` for deleted edge `(u,v)` | `~sab{true|true}^(n+1) true` |
//! | `d`  | worlds  | none                                 | `~rem^n true`, n = worlds |
//! | `r`  | worlds  | `rem{@v}` for deleted world `v`       | `~rem{true}^n true` |
//!
//! Deletion sequences never delete the point, which no removal modality can
//! remove either. Subformulas `E(M after D)` are shared between all
//! sequences deleting the same set `D`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::bisim::{oracle_bisimilar, BisimKind, OracleError};
use crate::formula::{Formula, FormulaRef};
use crate::model::{Edge, KripkeModel, PointedModel, World};
use crate::semantics::{eval_cached, EvalError};

/// Size limits for [`build_char`]; the formula enumerates all deletion
/// sequences and grows factorially.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharGuard {
    /// Applies to `s` and `g`.
    pub max_edges: usize,
    /// Applies to `d` and `r`.
    pub max_worlds: usize,
}

impl Default for CharGuard {
    fn default() -> Self {
        CharGuard {
            max_edges: 3,
            max_worlds: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CharformError {
    #[error("characteristic-formula size guard exceeded: {found} {what} (limit {limit})")]
    SizeGuardExceeded {
        what: &'static str,
        found: usize,
        limit: usize,
    },
    #[error("proposition `{0}` uses the `@` prefix reserved for fresh atoms")]
    ReservedAtom(String),
    #[error("no characteristic formula for kind `{0}`")]
    UnsupportedKind(BisimKind),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The fresh atom standing for world `w`: `@` followed by the id when the id
/// is a plain identifier tail, otherwise `@@` followed by the hex bytes of
/// the id. Distinct worlds always get distinct atoms.
pub fn fresh_atom(w: &World) -> String {
    let id = w.as_str();
    if id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        format!("@{id}")
    } else {
        let hex: String = id.bytes().map(|b| format!("{b:02x}")).collect();
        format!("@@{hex}")
    }
}

fn check_reserved(m: &KripkeModel) -> Result<(), CharformError> {
    match m.propositions().iter().find(|p| p.starts_with('@')) {
        Some(p) => Err(CharformError::ReservedAtom(p.clone())),
        None => Ok(()),
    }
}

/// `E(M)` for a whole model.
pub fn build_e(m: &KripkeModel) -> Result<Formula, CharformError> {
    check_reserved(m)?;
    let mut b = Builder::new(m);
    Ok(Arc::unwrap_or_clone(b.e(m)))
}

/// The pieces of a characteristic formula, before they are conjoined.
#[derive(Clone, Debug)]
pub struct CharParts {
    pub e: FormulaRef,
    /// One entry per sequence length `k = 1, 2, ...`.
    pub levels: Vec<Level>,
    pub terminal: FormulaRef,
}

#[derive(Clone, Debug)]
pub struct Level {
    /// One clause per deletion sequence of this length, in canonical order.
    pub existential: Vec<FormulaRef>,
    pub universal: FormulaRef,
}

impl CharParts {
    /// `E ∧ level_1 ∧ ... ∧ level_k ∧ terminal`, each level being the
    /// conjunction of its existential clauses and its universal clause.
    pub fn assemble(&self) -> Formula {
        let mut items: Vec<FormulaRef> = vec![self.e.clone()];
        for level in &self.levels {
            let ex = Formula::conj(level.existential.iter().cloned());
            items.push(Arc::new(Formula::and(ex, level.universal.clone())));
        }
        items.push(self.terminal.clone());
        Formula::conj(items)
    }
}

/// The characteristic formula of `m` for a deletion kind (`s`, `d`, `g` or
/// `r`) under the default guard.
pub fn build_char(kind: BisimKind, m: &PointedModel) -> Result<Formula, CharformError> {
    Ok(char_parts(kind, m, CharGuard::default())?.assemble())
}

pub fn build_char_with(
    kind: BisimKind,
    m: &PointedModel,
    guard: CharGuard,
) -> Result<Formula, CharformError> {
    Ok(char_parts(kind, m, guard)?.assemble())
}

pub fn char_parts(
    kind: BisimKind,
    m: &PointedModel,
    guard: CharGuard,
) -> Result<CharParts, CharformError> {
    let model = m.model();
    check_reserved(model)?;
    match kind {
        BisimKind::Modal => return Err(CharformError::UnsupportedKind(kind)),
        BisimKind::S | BisimKind::G if model.edges().len() > guard.max_edges => {
            return Err(CharformError::SizeGuardExceeded {
                what: "edges",
                found: model.edges().len(),
                limit: guard.max_edges,
            })
        }
        BisimKind::D | BisimKind::R if model.worlds().len() > guard.max_worlds => {
            return Err(CharformError::SizeGuardExceeded {
                what: "worlds",
                found: model.worlds().len(),
                limit: guard.max_worlds,
            })
        }
        _ => {}
    }
    let mut b = Builder::new(model);
    let e = b.e(model);
    let (levels, terminal) = if kind.deletes_edges() {
        b.edge_parts(kind, model)
    } else {
        b.world_parts(kind, m)
    };
    Ok(CharParts {
        e,
        levels,
        terminal,
    })
}

struct Builder {
    at: BTreeMap<World, FormulaRef>,
    fresh: BTreeMap<World, FormulaRef>,
    e_by_edges: BTreeMap<BTreeSet<Edge>, FormulaRef>,
    e_by_worlds: BTreeMap<BTreeSet<World>, FormulaRef>,
}

impl Builder {
    fn new(m: &KripkeModel) -> Self {
        let mut at = BTreeMap::new();
        let mut fresh = BTreeMap::new();
        for w in m.worlds() {
            let lits: Vec<Formula> = m
                .propositions()
                .iter()
                .map(|p| {
                    let a = Formula::atom(p);
                    if m.holds(p, w) {
                        a
                    } else {
                        Formula::not(a)
                    }
                })
                .collect();
            at.insert(w.clone(), Arc::new(Formula::conj(lits)));
            fresh.insert(w.clone(), Arc::new(Formula::atom(&fresh_atom(w))));
        }
        Builder {
            at,
            fresh,
            e_by_edges: BTreeMap::new(),
            e_by_worlds: BTreeMap::new(),
        }
    }

    /// `E` of a model whose worlds are among the source model's worlds.
    fn e(&mut self, m: &KripkeModel) -> FormulaRef {
        let clauses: Vec<Formula> = m
            .worlds()
            .iter()
            .map(|x| {
                let succ: Vec<FormulaRef> =
                    m.successors(x).map(|y| self.fresh[y].clone()).collect();
                let env = if succ.is_empty() {
                    Formula::and(Formula::Top, Formula::boxed(Formula::Bot))
                } else {
                    Formula::and(
                        Formula::conj(succ.iter().map(|p| Formula::Dia(p.clone()))),
                        Formula::boxed(Formula::disj(succ.iter().cloned())),
                    )
                };
                Formula::imp(self.fresh[x].clone(), Formula::and(self.at[x].clone(), env))
            })
            .collect();
        Arc::new(Formula::conj(clauses))
    }

    fn e_without_edges(&mut self, m: &KripkeModel, gone: &BTreeSet<Edge>) -> FormulaRef {
        if let Some(f) = self.e_by_edges.get(gone) {
            return f.clone();
        }
        let mut sub = m.clone();
        for e in gone {
            sub = sub.delete_edge(e).expect("edge of the source model");
        }
        let f = self.e(&sub);
        self.e_by_edges.insert(gone.clone(), f.clone());
        f
    }

    fn e_without_worlds(&mut self, m: &KripkeModel, gone: &BTreeSet<World>) -> FormulaRef {
        if let Some(f) = self.e_by_worlds.get(gone) {
            return f.clone();
        }
        let mut sub = m.clone();
        for w in gone {
            sub = sub
                .delete_point(w)
                .expect("non-point world of the source model");
        }
        let f = self.e(&sub);
        self.e_by_worlds.insert(gone.clone(), f.clone());
        f
    }

    fn edge_parts(&mut self, kind: BisimKind, m: &KripkeModel) -> (Vec<Level>, FormulaRef) {
        let all: Vec<Edge> = m.edges().iter().cloned().collect();
        let n = all.len();
        let guarded = kind == BisimKind::G;
        let mut levels = Vec::new();
        for k in 1..=n {
            let seqs = sequences(&all, k);
            let mut existential = Vec::with_capacity(seqs.len());
            let mut targets = Vec::with_capacity(seqs.len());
            for seq in &seqs {
                let gone: BTreeSet<Edge> = seq.iter().cloned().collect();
                let target = self.e_without_edges(m, &gone);
                targets.push(target.clone());
                let mut f = target;
                for e in seq.iter().rev() {
                    f = Arc::new(if guarded {
                        Formula::GSab(self.fresh[&e.0].clone(), self.fresh[&e.1].clone(), f)
                    } else {
                        Formula::Sab(f)
                    });
                }
                existential.push(f);
            }
            let mut universal: FormulaRef = Arc::new(Formula::disj(targets));
            for _ in 0..k {
                universal = Arc::new(if guarded {
                    Formula::gsab_box(Formula::Top, Formula::Top, universal)
                } else {
                    Formula::SabBox(universal)
                });
            }
            levels.push(Level {
                existential,
                universal,
            });
        }
        let mut chain: FormulaRef = Arc::new(Formula::Top);
        for _ in 0..=n {
            chain = Arc::new(if guarded {
                Formula::gsab(Formula::Top, Formula::Top, chain)
            } else {
                Formula::Sab(chain)
            });
        }
        (levels, Arc::new(Formula::Not(chain)))
    }

    fn world_parts(&mut self, kind: BisimKind, m: &PointedModel) -> (Vec<Level>, FormulaRef) {
        let model = m.model();
        let others: Vec<World> = model
            .worlds()
            .iter()
            .filter(|w| *w != m.point())
            .cloned()
            .collect();
        let n = model.worlds().len();
        let guarded = kind == BisimKind::R;
        let mut levels = Vec::new();
        for k in 1..n {
            let seqs = sequences(&others, k);
            let mut existential = Vec::with_capacity(seqs.len());
            let mut targets = Vec::with_capacity(seqs.len());
            for seq in &seqs {
                let gone: BTreeSet<World> = seq.iter().cloned().collect();
                let target = self.e_without_worlds(model, &gone);
                targets.push(target.clone());
                let mut f = target;
                for w in seq.iter().rev() {
                    f = Arc::new(if guarded {
                        Formula::GRem(self.fresh[w].clone(), f)
                    } else {
                        Formula::Rem(f)
                    });
                }
                existential.push(f);
            }
            let mut universal: FormulaRef = Arc::new(Formula::disj(targets));
            for _ in 0..k {
                universal = Arc::new(if guarded {
                    Formula::grem_box(Formula::Top, universal)
                } else {
                    Formula::RemBox(universal)
                });
            }
            levels.push(Level {
                existential,
                universal,
            });
        }
        let mut chain: FormulaRef = Arc::new(Formula::Top);
        for _ in 0..n {
            chain = Arc::new(if guarded {
                Formula::grem(Formula::Top, chain)
            } else {
                Formula::Rem(chain)
            });
        }
        (levels, Arc::new(Formula::Not(chain)))
    }
}

/// All length-`k` sequences of pairwise distinct items, in lexicographic
/// order of positions.
pub fn sequences<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(
        items: &[T],
        k: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                cur.push(items[i].clone());
                go(items, k, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        items,
        k,
        &mut vec![false; items.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// A model extended with one fresh atom per world of a source model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedModel {
    pub base: PointedModel,
    /// Fresh atom name to the worlds of `base` where it holds.
    pub fresh: BTreeMap<String, BTreeSet<World>>,
}

impl ExpandedModel {
    /// The base model with the fresh atoms declared and valued. Initial
    /// propositions of the source model that the base does not declare are
    /// declared false everywhere, so formulas over both vocabularies
    /// evaluate.
    pub fn to_pointed(&self, source_props: &BTreeSet<String>) -> PointedModel {
        let missing = source_props
            .iter()
            .filter(|p| !self.base.model().propositions().contains(*p))
            .map(|p| (p.clone(), BTreeSet::new()));
        let model = self
            .base
            .model()
            .with_extra_valuation(missing.chain(self.fresh.clone()));
        PointedModel::new(model, self.base.point().clone()).expect("same worlds")
    }
}

/// Expands `n` so that the fresh atom of each world `x` of `m` holds exactly
/// at the worlds `u` with `(m, x)` and `(n, u)` `kind`-bisimilar, as decided
/// by the oracle.
pub fn canonical_expansion(
    kind: BisimKind,
    m: &PointedModel,
    n: &PointedModel,
) -> Result<ExpandedModel, CharformError> {
    check_reserved(m.model())?;
    check_reserved(n.model())?;
    let mut fresh = BTreeMap::new();
    for x in m.model().worlds() {
        let mx = m.repoint(x).expect("declared world");
        let mut holds = BTreeSet::new();
        for u in n.model().worlds() {
            let nu = n.repoint(u).expect("declared world");
            if oracle_bisimilar(kind, &mx, &nu)?.is_yes() {
                holds.insert(u.clone());
            }
        }
        fresh.insert(fresh_atom(x), holds);
    }
    Ok(ExpandedModel {
        base: n.clone(),
        fresh,
    })
}

/// Evaluates the characteristic formula of `m` conjoined with the fresh
/// atom of `m`'s point in the canonical expansion of `n`. Pairs that fail
/// the count gate of `kind` (edges for `s`/`g`, worlds for `d`/`r`) are
/// reported `false` without evaluation.
pub fn char_check(
    kind: BisimKind,
    m: &PointedModel,
    n: &PointedModel,
) -> Result<bool, CharformError> {
    char_check_with(kind, m, n, CharGuard::default())
}

pub fn char_check_with(
    kind: BisimKind,
    m: &PointedModel,
    n: &PointedModel,
    guard: CharGuard,
) -> Result<bool, CharformError> {
    let parts = char_parts(kind, m, guard)?;
    let gate = if kind.deletes_edges() {
        m.model().edges().len() == n.model().edges().len()
    } else {
        m.model().worlds().len() == n.model().worlds().len()
    };
    if !gate {
        return Ok(false);
    }
    let expanded = canonical_expansion(kind, m, n)?.to_pointed(m.model().propositions());
    let f = Formula::and(parts.assemble(), Formula::atom(&fresh_atom(m.point())));
    Ok(eval_cached(&expanded, &f)?)
}
