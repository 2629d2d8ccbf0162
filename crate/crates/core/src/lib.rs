//! Bisimilarity for link-deletion (sabotage) and point-deletion modal logics
//! over finite Kripke models.
//!
//! The crate provides:
//!
//! * [`model`]: Kripke models, edge and point deletion, JSON I/O;
//! * [`formula`]: the unified formula language, parser and printer;
//! * [`semantics`]: model checking of formulas;
//! * [`bisim`]: recursive checkers for the four deletion bisimulations, a
//!   modal baseline and a greatest-fixpoint oracle;
//! * [`charform`]: characteristic formulas and the canonical-expansion check;
//! * [`translate`]: the model translations between the two deletion styles;
//! * [`correspondence`]: an exploratory comparison run through those
//!   translations.

pub mod bisim;
pub mod charform;
pub mod correspondence;
pub mod formula;
mod frame;
pub mod model;
pub mod semantics;
pub mod translate;

pub use bisim::{Answer, BisimKind, Verdict};
pub use formula::{parse, print, Formula, Fragment};
pub use model::{load_model, save_model, Edge, KripkeModel, ModelError, PointedModel, World};
pub use semantics::eval;
