//! Truth of formulas at worlds of finite models.
//!
//! Deletion modalities quantify over the current model: `sab` over its
//! edges, `rem` over its worlds other than the evaluation point. Guards of
//! `sab{ψ|χ}` and `rem{ψ}` are evaluated before the deletion happens.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::Formula;
use crate::frame::{Frame, View};
use crate::model::{KripkeModel, PointedModel, World};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("formula mentions undeclared proposition `{0}`")]
    UndeclaredAtom(String),
    #[error("world `{0}` is not in the model")]
    UnknownWorld(World),
}

/// Whether `f` holds at the point of `m`.
pub fn eval(m: &PointedModel, f: &Formula) -> Result<bool, EvalError> {
    Evaluator::new(m.model()).eval_at(m.point(), f)
}

/// Same as [`eval`] with memoization of intermediate results.
pub fn eval_cached(m: &PointedModel, f: &Formula) -> Result<bool, EvalError> {
    Evaluator::new(m.model()).with_cache().eval_at(m.point(), f)
}

/// Truth of `f` at every world, in canonical world order.
pub fn eval_all(m: &KripkeModel, f: &Formula) -> Result<Vec<(World, bool)>, EvalError> {
    let mut ev = Evaluator::new(m);
    m.worlds()
        .iter()
        .map(|w| Ok((w.clone(), ev.eval_at(w, f)?)))
        .collect()
}

/// Reusable evaluator over one model.
pub struct Evaluator {
    frame: Frame,
    props: HashMap<String, usize>,
    cache: Option<HashMap<(View, usize, usize), bool>>,
}

impl Evaluator {
    pub fn new(m: &KripkeModel) -> Self {
        let names: Vec<String> = m.propositions().iter().cloned().collect();
        let props = names
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Evaluator {
            frame: Frame::new(m, &names),
            props,
            cache: None,
        }
    }

    /// Memoize on (remaining model, world, subformula). Results are
    /// unchanged; shared subformulas of large DAGs get evaluated once per
    /// configuration.
    pub fn with_cache(mut self) -> Self {
        self.cache = Some(HashMap::new());
        self
    }

    pub fn eval_at(&mut self, w: &World, f: &Formula) -> Result<bool, EvalError> {
        let wi = self
            .frame
            .index_of(w)
            .ok_or_else(|| EvalError::UnknownWorld(w.clone()))?;
        if let Some(a) = f.atoms().iter().find(|a| !self.props.contains_key(&***a)) {
            return Err(EvalError::UndeclaredAtom(a.to_string()));
        }
        let view = self.frame.full_view();
        let out = self.go(&view, wi, f);
        if let Some(c) = &mut self.cache {
            // keys hold raw pointers into `f`, which the caller may drop
            c.clear();
        }
        Ok(out)
    }

    fn go(&mut self, view: &View, w: usize, f: &Formula) -> bool {
        let cacheable = !f.children().is_empty() && self.cache.is_some();
        if cacheable {
            let key = (view.clone(), w, f as *const Formula as usize);
            if let Some(&hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
                return hit;
            }
            let out = self.compute(view, w, f);
            if let Some(c) = &mut self.cache {
                c.insert(key, out);
            }
            return out;
        }
        self.compute(view, w, f)
    }

    fn alive_edges(&self, view: &View) -> Vec<usize> {
        view.edges.iter().collect()
    }

    fn others(&self, view: &View, w: usize) -> Vec<usize> {
        view.worlds.iter().filter(|&v| v != w).collect()
    }

    fn compute(&mut self, view: &View, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Atom(a) => self.frame.labels[w].contains(self.props[&**a]),
            Formula::Not(a) => !self.go(view, w, a),
            Formula::And(a, b) => self.go(view, w, a) && self.go(view, w, b),
            Formula::Or(a, b) => self.go(view, w, a) || self.go(view, w, b),
            Formula::Imp(a, b) => !self.go(view, w, a) || self.go(view, w, b),
            Formula::Dia(a) => {
                let succ: Vec<usize> = view.successors(&self.frame, w).collect();
                succ.into_iter().any(|u| self.go(view, u, a))
            }
            Formula::Box(a) => {
                let succ: Vec<usize> = view.successors(&self.frame, w).collect();
                succ.into_iter().all(|u| self.go(view, u, a))
            }
            Formula::Sab(a) => self
                .alive_edges(view)
                .into_iter()
                .any(|e| self.go(&view.without_edge(e), w, a)),
            Formula::SabBox(a) => self
                .alive_edges(view)
                .into_iter()
                .all(|e| self.go(&view.without_edge(e), w, a)),
            Formula::GSab(s, t, a) => self.alive_edges(view).into_iter().any(|e| {
                let (u, v) = self.frame.edges[e];
                self.go(view, u, s) && self.go(view, v, t) && self.go(&view.without_edge(e), w, a)
            }),
            Formula::GSabBox(s, t, a) => self.alive_edges(view).into_iter().all(|e| {
                let (u, v) = self.frame.edges[e];
                !(self.go(view, u, s) && self.go(view, v, t))
                    || self.go(&view.without_edge(e), w, a)
            }),
            Formula::Rem(a) => self.others(view, w).into_iter().any(|v| {
                let next = view.without_world(&self.frame, v);
                self.go(&next, w, a)
            }),
            Formula::RemBox(a) => self.others(view, w).into_iter().all(|v| {
                let next = view.without_world(&self.frame, v);
                self.go(&next, w, a)
            }),
            Formula::GRem(g, a) => self.others(view, w).into_iter().any(|v| {
                if !self.go(view, v, g) {
                    return false;
                }
                let next = view.without_world(&self.frame, v);
                self.go(&next, w, a)
            }),
            Formula::GRemBox(g, a) => self.others(view, w).into_iter().all(|v| {
                if !self.go(view, v, g) {
                    return true;
                }
                let next = view.without_world(&self.frame, v);
                self.go(&next, w, a)
            }),
        }
    }
}
