//! Formulas of the unified language: basic modal logic plus the sabotage
//! (`sab`, `sab{ψ|χ}`) and removal (`rem`, `rem{ψ}`) families, with their
//! box duals as primitive constructors.
//!
//! Concrete syntax:
//!
//! ```text
//! φ ::= true | false | ident | ~φ | (φ & φ) | (φ | φ) | (φ -> φ)
//!     | dia φ | box φ | sab φ | sbox φ | rem φ | rbox φ
//!     | sab{φ|φ} φ | sbox{φ|φ} φ | rem{φ} φ | rbox{φ} φ
//! ident ::= [A-Za-z_@][A-Za-z0-9_@]*
//! ```
//!
//! Binary connectives must be parenthesized; there is no precedence. Atoms
//! starting with `@` are reserved for characteristic-formula fresh atoms.
//!
//! Children are shared through `Arc`, so a formula may be a DAG; printing
//! always materializes the full tree.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type FormulaRef = Arc<Formula>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bot,
    Atom(Arc<str>),
    Not(FormulaRef),
    And(FormulaRef, FormulaRef),
    Or(FormulaRef, FormulaRef),
    Imp(FormulaRef, FormulaRef),
    Dia(FormulaRef),
    Box(FormulaRef),
    /// Delete some edge, then the body holds at the same point.
    Sab(FormulaRef),
    SabBox(FormulaRef),
    /// `GSab(ψ, χ, φ)`: delete an edge `(u, v)` with ψ at `u` and χ at `v`.
    GSab(FormulaRef, FormulaRef, FormulaRef),
    GSabBox(FormulaRef, FormulaRef, FormulaRef),
    /// Delete some world other than the point.
    Rem(FormulaRef),
    RemBox(FormulaRef),
    /// `GRem(ψ, φ)`: delete a world other than the point where ψ holds.
    GRem(FormulaRef, FormulaRef),
    GRemBox(FormulaRef, FormulaRef),
}

/// Constructor shorthands. `Formula::and(a, b)` reads better than
/// `Formula::And(Arc::new(a), Arc::new(b))` at call sites.
impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }
    pub fn not(f: impl Into<FormulaRef>) -> Formula {
        Formula::Not(f.into())
    }
    pub fn and(a: impl Into<FormulaRef>, b: impl Into<FormulaRef>) -> Formula {
        Formula::And(a.into(), b.into())
    }
    pub fn or(a: impl Into<FormulaRef>, b: impl Into<FormulaRef>) -> Formula {
        Formula::Or(a.into(), b.into())
    }
    pub fn imp(a: impl Into<FormulaRef>, b: impl Into<FormulaRef>) -> Formula {
        Formula::Imp(a.into(), b.into())
    }
    pub fn dia(f: impl Into<FormulaRef>) -> Formula {
        Formula::Dia(f.into())
    }
    pub fn boxed(f: impl Into<FormulaRef>) -> Formula {
        Formula::Box(f.into())
    }
    pub fn sab(f: impl Into<FormulaRef>) -> Formula {
        Formula::Sab(f.into())
    }
    pub fn sab_box(f: impl Into<FormulaRef>) -> Formula {
        Formula::SabBox(f.into())
    }
    pub fn gsab(
        src: impl Into<FormulaRef>,
        dst: impl Into<FormulaRef>,
        f: impl Into<FormulaRef>,
    ) -> Formula {
        Formula::GSab(src.into(), dst.into(), f.into())
    }
    pub fn gsab_box(
        src: impl Into<FormulaRef>,
        dst: impl Into<FormulaRef>,
        f: impl Into<FormulaRef>,
    ) -> Formula {
        Formula::GSabBox(src.into(), dst.into(), f.into())
    }
    pub fn rem(f: impl Into<FormulaRef>) -> Formula {
        Formula::Rem(f.into())
    }
    pub fn rem_box(f: impl Into<FormulaRef>) -> Formula {
        Formula::RemBox(f.into())
    }
    pub fn grem(guard: impl Into<FormulaRef>, f: impl Into<FormulaRef>) -> Formula {
        Formula::GRem(guard.into(), f.into())
    }
    pub fn grem_box(guard: impl Into<FormulaRef>, f: impl Into<FormulaRef>) -> Formula {
        Formula::GRemBox(guard.into(), f.into())
    }

    /// Right-nested conjunction; `true` when empty.
    pub fn conj<I>(items: I) -> Formula
    where
        I: IntoIterator,
        I::IntoIter: DoubleEndedIterator,
        I::Item: Into<FormulaRef>,
    {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Formula::Top,
            Some(last) => {
                let mut acc: FormulaRef = last.into();
                for f in it {
                    acc = Arc::new(Formula::And(f.into(), acc));
                }
                Arc::unwrap_or_clone(acc)
            }
        }
    }

    /// Right-nested disjunction; `false` when empty.
    pub fn disj<I>(items: I) -> Formula
    where
        I: IntoIterator,
        I::IntoIter: DoubleEndedIterator,
        I::Item: Into<FormulaRef>,
    {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Formula::Bot,
            Some(last) => {
                let mut acc: FormulaRef = last.into();
                for f in it {
                    acc = Arc::new(Formula::Or(f.into(), acc));
                }
                Arc::unwrap_or_clone(acc)
            }
        }
    }

    /// Direct subformulas, guards first.
    pub fn children(&self) -> Vec<&FormulaRef> {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => vec![],
            Formula::Not(a)
            | Formula::Dia(a)
            | Formula::Box(a)
            | Formula::Sab(a)
            | Formula::SabBox(a)
            | Formula::Rem(a)
            | Formula::RemBox(a) => vec![a],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::GRem(a, b)
            | Formula::GRemBox(a, b) => vec![a, b],
            Formula::GSab(a, b, c) | Formula::GSabBox(a, b, c) => vec![a, b, c],
        }
    }

    fn is_modal_operator(&self) -> bool {
        !matches!(
            self,
            Formula::Top
                | Formula::Bot
                | Formula::Atom(_)
                | Formula::Not(_)
                | Formula::And(..)
                | Formula::Or(..)
                | Formula::Imp(..)
        )
    }

    /// Height of the syntax tree where negation does not add a level, so a
    /// literal has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => 1,
            Formula::Not(a) => a.depth(),
            _ => 1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    /// Nesting depth of modal and deletion operators (guards included).
    pub fn modal_depth(&self) -> usize {
        let inner = self
            .children()
            .iter()
            .map(|c| c.modal_depth())
            .max()
            .unwrap_or(0);
        inner + usize::from(self.is_modal_operator())
    }

    /// Distinct atom names, visiting shared subterms once.
    pub fn atoms(&self) -> Vec<Arc<str>> {
        let mut seen: HashSet<*const Formula> = HashSet::new();
        let mut names: Vec<Arc<str>> = Vec::new();
        let mut stack: Vec<&Formula> = vec![self];
        while let Some(f) = stack.pop() {
            if let Formula::Atom(a) = f {
                if !names.contains(a) {
                    names.push(a.clone());
                }
            }
            for c in f.children() {
                if seen.insert(Arc::as_ptr(c)) {
                    stack.push(c);
                }
            }
        }
        names.sort();
        names
    }

    /// Whether every operator used is allowed in `fragment`.
    pub fn in_fragment(&self, fragment: Fragment) -> bool {
        let mut seen: HashSet<*const Formula> = HashSet::new();
        let mut stack: Vec<&Formula> = vec![self];
        while let Some(f) = stack.pop() {
            if !fragment.allows(f) {
                return false;
            }
            for c in f.children() {
                if seen.insert(Arc::as_ptr(c)) {
                    stack.push(c);
                }
            }
        }
        true
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("true"),
            Formula::Bot => f.write_str("false"),
            Formula::Atom(a) => f.write_str(a),
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Imp(a, b) => write!(f, "({a} -> {b})"),
            Formula::Dia(a) => write!(f, "dia {a}"),
            Formula::Box(a) => write!(f, "box {a}"),
            Formula::Sab(a) => write!(f, "sab {a}"),
            Formula::SabBox(a) => write!(f, "sbox {a}"),
            Formula::GSab(s, t, a) => write!(f, "sab{{{s}|{t}}} {a}"),
            Formula::GSabBox(s, t, a) => write!(f, "sbox{{{s}|{t}}} {a}"),
            Formula::Rem(a) => write!(f, "rem {a}"),
            Formula::RemBox(a) => write!(f, "rbox {a}"),
            Formula::GRem(g, a) => write!(f, "rem{{{g}}} {a}"),
            Formula::GRemBox(g, a) => write!(f, "rbox{{{g}}} {a}"),
        }
    }
}

/// Canonical text of a formula; `parse(&print(f)) == Ok(f)`.
pub fn print(f: &Formula) -> String {
    f.to_string()
}

/// Sublanguages of the unified syntax, named after their logics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fragment {
    Modal,
    Sml,
    Gsml,
    Psl,
    Mlsr,
}

impl Fragment {
    pub const ALL: [Fragment; 5] = [
        Fragment::Modal,
        Fragment::Sml,
        Fragment::Gsml,
        Fragment::Psl,
        Fragment::Mlsr,
    ];

    fn allows(self, f: &Formula) -> bool {
        match f {
            Formula::Sab(_) | Formula::SabBox(_) => matches!(self, Fragment::Sml | Fragment::Gsml),
            Formula::GSab(..) | Formula::GSabBox(..) => self == Fragment::Gsml,
            Formula::Rem(_) | Formula::RemBox(_) => matches!(self, Fragment::Psl | Fragment::Mlsr),
            Formula::GRem(..) | Formula::GRemBox(..) => self == Fragment::Mlsr,
            _ => true,
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::Modal => "modal",
            Fragment::Sml => "sml",
            Fragment::Gsml => "gsml",
            Fragment::Psl => "psl",
            Fragment::Mlsr => "mlsr",
        })
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Nesting limit of the recursive-descent parser.
pub const MAX_NESTING: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: unknown token `{found}`")]
    UnknownToken {
        line: usize,
        column: usize,
        found: char,
    },
    #[error("{line}:{column}: expected {expected}, found {found}")]
    Unexpected {
        line: usize,
        column: usize,
        expected: &'static str,
        found: String,
    },
    #[error("{line}:{column}: formula nested deeper than {MAX_NESTING}")]
    TooDeep { line: usize, column: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Dia,
    Box,
    Sab,
    SBox,
    Rem,
    RBox,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
            other => {
                let s = match other {
                    Tok::True => "true",
                    Tok::False => "false",
                    Tok::Tilde => "~",
                    Tok::Amp => "&",
                    Tok::Bar => "|",
                    Tok::Arrow => "->",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Dia => "dia",
                    Tok::Box => "box",
                    Tok::Sab => "sab",
                    Tok::SBox => "sbox",
                    Tok::Rem => "rem",
                    Tok::RBox => "rbox",
                    Tok::Ident(_) | Tok::Eof => unreachable!(),
                };
                write!(f, "`{s}`")
            }
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '@'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '@'
}

/// Whether `s` is a valid atom name in the concrete syntax.
pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char) && keyword(s).is_none()
}

fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "true" => Tok::True,
        "false" => Tok::False,
        "dia" => Tok::Dia,
        "box" => Tok::Box,
        "sab" => Tok::Sab,
        "sbox" => Tok::SBox,
        "rem" => Tok::Rem,
        "rbox" => Tok::RBox,
        _ => return None,
    })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = if is_ident_start(c) {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !is_ident_char(d) {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            keyword(&s).unwrap_or(Tok::Ident(s))
        } else {
            chars.next();
            col += 1;
            match c {
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '-' if chars.peek() == Some(&'>') => {
                    chars.next();
                    col += 1;
                    Tok::Arrow
                }
                other => {
                    return Err(ParseError::UnknownToken {
                        line: l,
                        column: k,
                        found: other,
                    })
                }
            }
        };
        out.push((tok, l, k));
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    nesting: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let (tok, line, column) = &self.toks[self.pos];
        ParseError::Unexpected {
            line: *line,
            column: *column,
            expected,
            found: tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            let (_, line, column) = self.toks[self.pos];
            return Err(ParseError::TooDeep { line, column });
        }
        let f = self.formula_inner();
        self.nesting -= 1;
        f
    }

    fn formula_inner(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Tok::True => Ok(Formula::Top),
            Tok::False => Ok(Formula::Bot),
            Tok::Ident(s) => Ok(Formula::Atom(Arc::from(s))),
            Tok::Tilde => Ok(Formula::not(self.formula()?)),
            Tok::Dia => Ok(Formula::dia(self.formula()?)),
            Tok::Box => Ok(Formula::boxed(self.formula()?)),
            Tok::Sab | Tok::SBox => {
                let universal = self.toks[self.pos - 1].0 == Tok::SBox;
                if *self.peek() == Tok::LBrace {
                    self.bump();
                    let src = self.formula()?;
                    self.expect(Tok::Bar, "`|` between sabotage guards")?;
                    let dst = self.formula()?;
                    self.expect(Tok::RBrace, "`}`")?;
                    let body = self.formula()?;
                    Ok(if universal {
                        Formula::gsab_box(src, dst, body)
                    } else {
                        Formula::gsab(src, dst, body)
                    })
                } else {
                    let body = self.formula()?;
                    Ok(if universal {
                        Formula::sab_box(body)
                    } else {
                        Formula::sab(body)
                    })
                }
            }
            Tok::Rem | Tok::RBox => {
                let universal = self.toks[self.pos - 1].0 == Tok::RBox;
                if *self.peek() == Tok::LBrace {
                    self.bump();
                    let guard = self.formula()?;
                    self.expect(Tok::RBrace, "`}`")?;
                    let body = self.formula()?;
                    Ok(if universal {
                        Formula::grem_box(guard, body)
                    } else {
                        Formula::grem(guard, body)
                    })
                } else {
                    let body = self.formula()?;
                    Ok(if universal {
                        Formula::rem_box(body)
                    } else {
                        Formula::rem(body)
                    })
                }
            }
            Tok::LParen => {
                let lhs = self.formula()?;
                let op = self.peek().clone();
                let f = match op {
                    Tok::RParen => lhs,
                    Tok::Amp | Tok::Bar | Tok::Arrow => {
                        self.bump();
                        let rhs = self.formula()?;
                        match op {
                            Tok::Amp => Formula::and(lhs, rhs),
                            Tok::Bar => Formula::or(lhs, rhs),
                            _ => Formula::imp(lhs, rhs),
                        }
                    }
                    _ => return Err(self.error("`&`, `|`, `->` or `)`")),
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("a formula"))
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        nesting: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
enum Op {
    Not,
    And,
    Or,
    Imp,
    Dia,
    Box,
    Sab,
    SabBox,
    GSab,
    GSabBox,
    Rem,
    RemBox,
    GRem,
    GRemBox,
}

fn ops_for(fragment: Fragment) -> Vec<Op> {
    let mut ops = vec![Op::Not, Op::And, Op::Or, Op::Imp, Op::Dia, Op::Box];
    match fragment {
        Fragment::Modal => {}
        Fragment::Sml => ops.extend([Op::Sab, Op::SabBox]),
        Fragment::Gsml => ops.extend([Op::Sab, Op::SabBox, Op::GSab, Op::GSabBox]),
        Fragment::Psl => ops.extend([Op::Rem, Op::RemBox]),
        Fragment::Mlsr => ops.extend([Op::Rem, Op::RemBox, Op::GRem, Op::GRemBox]),
    }
    ops
}

/// A deterministic pseudo-random formula of `fragment` with
/// [`Formula::depth`] at most `max_depth`, over atoms from `prop_pool`.
///
/// Panics if `max_depth == 0` or `prop_pool` is empty.
pub fn random_formula(
    seed: u64,
    fragment: Fragment,
    max_depth: usize,
    prop_pool: &[String],
) -> Formula {
    assert!(max_depth >= 1, "max_depth must be at least 1");
    assert!(!prop_pool.is_empty(), "prop_pool must be non-empty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen(&mut rng, &ops_for(fragment), max_depth, prop_pool)
}

fn literal(rng: &mut ChaCha8Rng, pool: &[String]) -> Formula {
    let roll = rng.gen_range(0..pool.len() * 2 + 2);
    let atom = match roll {
        0 => return Formula::Top,
        1 => return Formula::Bot,
        _ => Formula::atom(&pool[(roll - 2) / 2]),
    };
    if roll % 2 == 0 {
        atom
    } else {
        Formula::not(atom)
    }
}

fn gen(rng: &mut ChaCha8Rng, ops: &[Op], depth: usize, pool: &[String]) -> Formula {
    if depth <= 1 || rng.gen_bool(0.25) {
        return literal(rng, pool);
    }
    let sub = |rng: &mut ChaCha8Rng| gen(rng, ops, depth - 1, pool);
    match *ops.choose(rng).expect("non-empty operator set") {
        // negation does not consume depth, so recurse at the same budget
        Op::Not => Formula::not(gen(rng, ops, depth, pool)),
        Op::And => Formula::and(sub(rng), sub(rng)),
        Op::Or => Formula::or(sub(rng), sub(rng)),
        Op::Imp => Formula::imp(sub(rng), sub(rng)),
        Op::Dia => Formula::dia(sub(rng)),
        Op::Box => Formula::boxed(sub(rng)),
        Op::Sab => Formula::sab(sub(rng)),
        Op::SabBox => Formula::sab_box(sub(rng)),
        Op::GSab => Formula::gsab(sub(rng), sub(rng), sub(rng)),
        Op::GSabBox => Formula::gsab_box(sub(rng), sub(rng), sub(rng)),
        Op::Rem => Formula::rem(sub(rng)),
        Op::RemBox => Formula::rem_box(sub(rng)),
        Op::GRem => Formula::grem(sub(rng), sub(rng)),
        Op::GRemBox => Formula::grem_box(sub(rng), sub(rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("dia p"), Formula::dia(Formula::atom("p")));
        assert_eq!(
            p("sab{p|q} r"),
            Formula::gsab(Formula::atom("p"), Formula::atom("q"), Formula::atom("r"))
        );
        assert_eq!(
            p("rem{p} dia q"),
            Formula::grem(Formula::atom("p"), Formula::dia(Formula::atom("q")))
        );
    }

    #[test]
    fn print_examples() {
        assert_eq!(print(&Formula::sab(Formula::Top)), "sab true");
        assert_eq!(
            print(&Formula::and(
                Formula::atom("p"),
                Formula::not(Formula::atom("q"))
            )),
            "(p & ~q)"
        );
        assert_eq!(print(&Formula::rem_box(Formula::Bot)), "rbox false");
    }

    #[test]
    fn guards_may_be_parenthesized_binaries() {
        let f = p("sbox{(p | q)|~r} rbox{(a -> b)} @w0");
        assert_eq!(print(&f), "sbox{(p | q)|~r} rbox{(a -> b)} @w0");
    }

    #[test]
    fn redundant_parentheses_accepted() {
        assert_eq!(p("((p))"), Formula::atom("p"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("(p & q") {
            Err(ParseError::Unexpected { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
        match parse("p\n  & q") {
            Err(ParseError::Unexpected { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("dia $"),
            Err(ParseError::UnknownToken { found: '$', .. })
        ));
        assert!(parse("p & q").is_err(), "binary operators need parentheses");
        assert!(parse("").is_err());
        assert!(parse("sab{p} q").is_err());
    }

    #[test]
    fn deep_nesting_is_rejected_not_overflowed() {
        let text = "~".repeat(100_000) + "p";
        assert!(matches!(parse(&text), Err(ParseError::TooDeep { .. })));
    }

    #[test]
    fn depth_measures() {
        assert_eq!(p("~p").depth(), 1);
        assert_eq!(p("(p & dia q)").depth(), 3);
        assert_eq!(p("(p & dia q)").modal_depth(), 1);
        assert_eq!(p("sab{dia p|q} r").modal_depth(), 2);
    }

    #[test]
    fn fragments() {
        assert!(p("dia box p").in_fragment(Fragment::Modal));
        assert!(!p("sab p").in_fragment(Fragment::Modal));
        assert!(p("sab p").in_fragment(Fragment::Sml));
        assert!(!p("sab{p|q} p").in_fragment(Fragment::Sml));
        assert!(p("sab{p|q} sab p").in_fragment(Fragment::Gsml));
        assert!(!p("rem p").in_fragment(Fragment::Gsml));
        assert!(p("rbox p").in_fragment(Fragment::Psl));
        assert!(p("rem{p} rem q").in_fragment(Fragment::Mlsr));
        assert!(!p("rem{p} q").in_fragment(Fragment::Psl));
    }

    #[test]
    fn conj_and_disj_shapes() {
        let a = || Formula::atom("a");
        assert_eq!(Formula::conj(Vec::<Formula>::new()), Formula::Top);
        assert_eq!(Formula::disj(Vec::<Formula>::new()), Formula::Bot);
        assert_eq!(print(&Formula::conj([a(), a(), a()])), "(a & (a & a))");
        assert_eq!(print(&Formula::disj([a()])), "a");
    }

    #[test]
    fn random_depth_one_is_literal() {
        let pool = vec!["p".to_string(), "q".to_string()];
        for seed in 0..50 {
            let f = random_formula(seed, Fragment::Modal, 1, &pool);
            let lit = match &f {
                Formula::Not(a) => a.as_ref(),
                other => other,
            };
            assert!(
                matches!(lit, Formula::Atom(_) | Formula::Top | Formula::Bot),
                "{f}"
            );
        }
    }

    #[test]
    fn random_is_deterministic() {
        let pool = vec!["p".to_string()];
        assert_eq!(
            random_formula(1, Fragment::Mlsr, 5, &pool),
            random_formula(1, Fragment::Mlsr, 5, &pool)
        );
    }

    #[test]
    fn atoms_are_collected_once() {
        let f = p("(sab{p|q} p & rem{@w} q)");
        let names: Vec<String> = f.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["@w", "p", "q"]);
    }
}
