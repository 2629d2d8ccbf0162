//! `sabbis`: command-line front end for sabotage and point-deletion
//! bisimilarity.
//!
//! Exit status: 0 = bisimilar/true, 1 = not bisimilar/false, 2 = usage or
//! validation error, 3 = size guard exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use sabotage_bisim::bisim::{
    check_with, oracle_bisimilar, proven_depth_bound, random_model, random_pair,
    stated_depth_bound, CheckOptions, OracleError,
};
use sabotage_bisim::charform::{build_char_with, char_check_with, CharGuard, CharformError};
use sabotage_bisim::correspondence::run_correspondence;
use sabotage_bisim::semantics::{eval_all, EvalError};
use sabotage_bisim::translate::{translate_f_pointed, translate_g_pointed, SinkEdges};
use sabotage_bisim::{
    load_model, parse, print, save_model, Answer, BisimKind, PointedModel, Verdict,
};

/// Stack size for the worker thread; the recursive checkers and the formula
/// evaluator recurse once per nesting level.
const STACK_BYTES: usize = 256 << 20;

#[derive(Parser, Debug)]
#[command(
    name = "sabbis",
    version,
    about = "Bisimilarity for sabotage and point-deletion modal logics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two pointed models are bisimilar.
    Check {
        #[arg(long)]
        kind: BisimKind,
        a: PathBuf,
        b: PathBuf,
        /// Also run the fixpoint oracle and report whether it agrees.
        #[arg(long)]
        oracle: bool,
        /// Report the depth bounds next to the measured depth.
        #[arg(long)]
        stats: bool,
        /// Memoize recursive calls (same answers, far fewer calls).
        #[arg(long)]
        cache: bool,
    },
    /// Evaluate a formula at the point of a model.
    Eval {
        model: PathBuf,
        formula: String,
        /// Print the truth value at every world as a JSON object.
        #[arg(long)]
        all: bool,
    },
    /// Print the characteristic formula of a model.
    Charform {
        #[arg(long)]
        kind: BisimKind,
        model: PathBuf,
        #[arg(long, default_value_t = CharGuard::default().max_edges)]
        max_edges: usize,
        #[arg(long, default_value_t = CharGuard::default().max_worlds)]
        max_worlds: usize,
    },
    /// Evaluate the characteristic formula of A on the canonical expansion
    /// of B and compare with the checker.
    Charcheck {
        #[arg(long)]
        kind: BisimKind,
        a: PathBuf,
        b: PathBuf,
    },
    /// Apply a model translation.
    Translate {
        #[arg(long, value_parser = ["f", "g"])]
        dir: String,
        #[arg(long, default_value_t = SinkEdges::Literal)]
        edges_to_sink: SinkEdges,
        model: PathBuf,
    },
    /// Print a seeded random pointed model.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        worlds: usize,
        #[arg(long)]
        edges: usize,
        /// Comma-separated proposition names.
        #[arg(long, default_value = "p", value_delimiter = ',')]
        props: Vec<String>,
    },
    /// Compare checkers with the oracle on seeded random pairs. The `g` and
    /// `r` checkers run with the cache enabled.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "s,d,g,r")]
        kinds: Vec<BisimKind>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 3)]
        worlds: usize,
        #[arg(long, default_value_t = 4)]
        edges: usize,
        #[arg(long, default_value = "p", value_delimiter = ',')]
        props: Vec<String>,
    },
    /// Run the translation correspondence experiment and print a Markdown
    /// report.
    Correspond {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Guard(e.to_string())
    }
}

impl From<CharformError> for Failure {
    fn from(e: CharformError) -> Self {
        match e {
            CharformError::SizeGuardExceeded { .. } | CharformError::Oracle(_) => {
                Failure::Guard(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_model(path: &Path) -> Result<PointedModel, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    load_model(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// The literal checker for `modal`, `s` and `d`; the cached one for `g` and
/// `r`, whose uncached recursion is impractical beyond toy sizes.
fn sweep_options(kind: BisimKind) -> CheckOptions {
    CheckOptions {
        cache: matches!(kind, BisimKind::G | BisimKind::R),
    }
}

#[derive(Serialize)]
struct DepthStats {
    max_depth: usize,
    calls: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    stated_depth_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proven_depth_bound: Option<usize>,
}

#[derive(Serialize)]
struct CheckReport<'a> {
    kind: BisimKind,
    algorithm: &'a Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'a Verdict>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<DepthStats>,
}

fn cmd_check(
    kind: BisimKind,
    a: &Path,
    b: &Path,
    oracle: bool,
    stats: bool,
    cache: bool,
) -> Outcome {
    let (m1, m2) = (read_model(a)?, read_model(b)?);
    let verdict = check_with(kind, &m1, &m2, CheckOptions { cache });
    if !oracle && !stats {
        println!("{}", verdict.to_json());
        return Ok(verdict.is_yes());
    }
    let reference = if oracle {
        Some(oracle_bisimilar(kind, &m1, &m2)?)
    } else {
        None
    };
    let report = CheckReport {
        kind,
        algorithm: &verdict,
        oracle: reference.as_ref(),
        agree: reference.as_ref().map(|r| r.answer == verdict.answer),
        stats: stats.then(|| DepthStats {
            max_depth: verdict.max_depth,
            calls: verdict.calls,
            stated_depth_bound: stated_depth_bound(kind, &m1, &m2),
            proven_depth_bound: proven_depth_bound(kind, &m1, &m2),
        }),
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serializes")
    );
    Ok(verdict.is_yes())
}

fn cmd_eval(model: &Path, text: &str, all: bool) -> Outcome {
    let m = read_model(model)?;
    let f = parse(text).map_err(|e| Failure::Usage(e.to_string()))?;
    let values = eval_all(m.model(), &f)?;
    let at_point = values
        .iter()
        .find(|(w, _)| w == m.point())
        .map(|(_, v)| *v)
        .expect("point is a world");
    if all {
        let map: serde_json::Map<String, serde_json::Value> = values
            .into_iter()
            .map(|(w, v)| (w.to_string(), serde_json::Value::Bool(v)))
            .collect();
        println!("{}", serde_json::Value::Object(map));
    } else {
        println!("{at_point}");
    }
    Ok(at_point)
}

fn cmd_charform(kind: BisimKind, model: &Path, guard: CharGuard) -> Outcome {
    let m = read_model(model)?;
    let f = build_char_with(kind, &m, guard)?;
    println!("{}", print(&f));
    Ok(true)
}

#[derive(Serialize)]
struct CharcheckReport {
    kind: BisimKind,
    char: bool,
    check: Answer,
    agree: bool,
}

fn cmd_charcheck(kind: BisimKind, a: &Path, b: &Path) -> Outcome {
    let (m1, m2) = (read_model(a)?, read_model(b)?);
    let char = char_check_with(kind, &m1, &m2, CharGuard::default())?;
    let verdict = check_with(kind, &m1, &m2, sweep_options(kind));
    let agree = char == verdict.is_yes();
    let report = CharcheckReport {
        kind,
        char,
        check: verdict.answer,
        agree,
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serializes")
    );
    if !agree {
        return Err(Failure::Usage(format!(
            "characteristic formula says {char} but the {kind} checker says {}",
            verdict.answer
        )));
    }
    Ok(char)
}

fn cmd_translate(dir: &str, mode: SinkEdges, model: &Path) -> Outcome {
    let m = read_model(model)?;
    let out = match dir {
        "f" => translate_f_pointed(&m),
        _ => translate_g_pointed(&m, mode),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{}", save_model(&out));
    Ok(true)
}

fn check_props(props: &[String]) -> Result<(), Failure> {
    match props
        .iter()
        .find(|p| !sabotage_bisim::formula::is_identifier(p))
    {
        Some(p) => Err(Failure::Usage(format!(
            "`{p}` is not a valid proposition name"
        ))),
        None => Ok(()),
    }
}

fn cmd_random(seed: u64, worlds: usize, edges: usize, props: &[String]) -> Outcome {
    if worlds == 0 {
        return Err(Failure::Usage("--worlds must be at least 1".into()));
    }
    check_props(props)?;
    println!("{}", save_model(&random_model(seed, worlds, edges, props)));
    Ok(true)
}

#[derive(Serialize)]
struct SweepLine {
    index: u64,
    seed: u64,
    kind: BisimKind,
    algorithm: Answer,
    oracle: Answer,
    #[serde(rename = "match")]
    agree: bool,
    max_depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    left: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right: Option<String>,
}

#[derive(Serialize, Default)]
struct SweepSummary {
    kind: Option<BisimKind>,
    pairs: u64,
    yes: u64,
    mismatches: u64,
    max_depth: usize,
}

fn cmd_sweep(
    kinds: &[BisimKind],
    seed: u64,
    count: u64,
    worlds: usize,
    edges: usize,
    props: &[String],
) -> Outcome {
    if worlds == 0 {
        return Err(Failure::Usage("--worlds must be at least 1".into()));
    }
    check_props(props)?;
    let rows: Vec<Result<Vec<SweepLine>, OracleError>> = (0..count)
        .into_par_iter()
        .map(|index| {
            let (a, b) = random_pair(seed + index, worlds, edges, props);
            kinds
                .iter()
                .map(|&kind| {
                    let verdict = check_with(kind, &a, &b, sweep_options(kind));
                    let reference = oracle_bisimilar(kind, &a, &b)?;
                    let agree = verdict.answer == reference.answer;
                    Ok(SweepLine {
                        index,
                        seed: seed + index,
                        kind,
                        algorithm: verdict.answer,
                        oracle: reference.answer,
                        agree,
                        max_depth: verdict.max_depth,
                        left: (!agree).then(|| save_model(&a)),
                        right: (!agree).then(|| save_model(&b)),
                    })
                })
                .collect()
        })
        .collect();
    let mut summaries: Vec<SweepSummary> = kinds
        .iter()
        .map(|&k| SweepSummary {
            kind: Some(k),
            ..SweepSummary::default()
        })
        .collect();
    for row in rows {
        for (line, summary) in row?.into_iter().zip(summaries.iter_mut()) {
            summary.pairs += 1;
            summary.yes += u64::from(line.algorithm.is_yes());
            summary.mismatches += u64::from(!line.agree);
            summary.max_depth = summary.max_depth.max(line.max_depth);
            println!("{}", serde_json::to_string(&line).expect("line serializes"));
        }
    }
    eprintln!(
        "{:<6} {:>6} {:>6} {:>10} {:>9}",
        "kind", "pairs", "yes", "mismatches", "max_depth"
    );
    for s in &summaries {
        println!("{}", serde_json::json!({ "summary": s }));
        eprintln!(
            "{:<6} {:>6} {:>6} {:>10} {:>9}",
            s.kind.map_or("-", BisimKind::as_str),
            s.pairs,
            s.yes,
            s.mismatches,
            s.max_depth
        );
    }
    Ok(summaries.iter().all(|s| s.mismatches == 0))
}

fn cmd_correspond(seed: u64, count: u64) -> Outcome {
    let report = run_correspondence(seed, count)?;
    print!("{}", report.to_markdown());
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check {
            kind,
            a,
            b,
            oracle,
            stats,
            cache,
        } => cmd_check(kind, &a, &b, oracle, stats, cache),
        Command::Eval {
            model,
            formula,
            all,
        } => cmd_eval(&model, &formula, all),
        Command::Charform {
            kind,
            model,
            max_edges,
            max_worlds,
        } => cmd_charform(
            kind,
            &model,
            CharGuard {
                max_edges,
                max_worlds,
            },
        ),
        Command::Charcheck { kind, a, b } => cmd_charcheck(kind, &a, &b),
        Command::Translate {
            dir,
            edges_to_sink,
            model,
        } => cmd_translate(&dir, edges_to_sink, &model),
        Command::Random {
            seed,
            worlds,
            edges,
            props,
        } => cmd_random(seed, worlds, edges, &props),
        Command::Sweep {
            kinds,
            seed,
            count,
            worlds,
            edges,
            props,
        } => cmd_sweep(&kinds, seed, count, worlds, edges, &props),
        Command::Correspond { seed, count } => cmd_correspond(seed, count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    rayon::ThreadPoolBuilder::new()
        .stack_size(STACK_BYTES / 4)
        .build_global()
        .expect("configure thread pool");
    let worker = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || run(cli))
        .expect("spawn worker thread");
    match worker.join().expect("worker thread panicked") {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
