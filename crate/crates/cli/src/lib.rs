//! Command-line front end for the profile Galois connection.
//!
//! Exit codes: 0 success, 1 invalid input, 2 property violation, 3 I/O error.

pub mod doc;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use profile_galois::analysis::{self, NormReport};
use profile_galois::checks::{self, CheckConfig};
use profile_galois::{
    CattellProfile, Exec, Factor, FactorBox, Formula, GaloisConnection, GlobalFactor, Reversal,
    SignatureSet, SzondiProfile, TraitBox, TraitId, TraitValue, TranslationTable, ValueSet,
};
use serde_json::{json, Map, Value};

pub use doc::{DocError, Document};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("property violation")]
    Violation,
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Violation => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "profile-galois",
    version,
    about = "Polarities between Cattell and Szondi profiles"
)]
pub struct Cli {
    /// Run every computation on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Szondi profiles entailing every Cattell profile of a ppp or ppp_set document.
    Right(RightArgs),
    /// Cattell profiles entailed by every Szondi profile of an spp or spp_set document.
    Left(LeftArgs),
    /// Run the seeded property suites.
    Check(CheckArgs),
    /// Inspect the translation table.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Walk through the left polarity of the Szondi norm profile.
    NormDemo(OutArgs),
    /// Sample Cattell profiles and report those with an empty right polarity.
    FindEmpty(FindEmptyArgs),
    /// Evaluate the five global factors at one value on an spp document.
    Global(GlobalArgs),
}

#[derive(Debug, Subcommand)]
pub enum TableAction {
    /// Print the table as CSV (trait,value,formula).
    Dump(OutArgs),
}

#[derive(Debug, Args)]
pub struct InArgs {
    /// Input document; standard input when omitted.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file; standard output when omitted.
    #[arg(long = "out", value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RightArgs {
    #[command(flatten)]
    pub input: InArgs,
    #[command(flatten)]
    pub output: OutArgs,
    /// List up to N members of the result in lexicographic order.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub enumerate: usize,
}

#[derive(Debug, Args)]
pub struct LeftArgs {
    #[command(flatten)]
    pub input: InArgs,
    #[command(flatten)]
    pub output: OutArgs,
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub enumerate: usize,
    /// For each trait with no allowed value, evaluate all ten cells.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub output: OutArgs,
    #[arg(long, value_name = "N", default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, value_name = "N", default_value_t = 42)]
    pub seed: u64,
    /// Reverse global-factor components as 11 - v instead of 10 - v.
    #[arg(long)]
    pub corrected_reversal: bool,
    /// Replace one cell before checking, as TRAIT,VALUE,FORMULA.
    #[arg(long, value_name = "CELL", hide = true)]
    pub inject_corruption: Vec<String>,
}

#[derive(Debug, Args)]
pub struct FindEmptyArgs {
    #[command(flatten)]
    pub output: OutArgs,
    #[arg(long, value_name = "N", default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, value_name = "N", default_value_t = 42)]
    pub seed: u64,
    /// Number of empty-image profiles to print in full.
    #[arg(long, value_name = "N", default_value_t = 3)]
    pub show: usize,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[command(flatten)]
    pub input: InArgs,
    #[command(flatten)]
    pub output: OutArgs,
    #[arg(long, value_name = "V")]
    pub value: i64,
    #[arg(long)]
    pub corrected_reversal: bool,
}

/// Text produced by a command and whether it reports a property violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub violation: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome {
            text,
            violation: false,
        }
    }
}

/// Runs a parsed command line, writing to `--out` or standard output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let outcome = execute(&cli.command, exec)?;
    let target = match &cli.command {
        Command::Right(a) => &a.output,
        Command::Left(a) => &a.output,
        Command::Check(a) => &a.output,
        Command::Table {
            action: TableAction::Dump(o),
        } => o,
        Command::NormDemo(o) => o,
        Command::FindEmpty(a) => &a.output,
        Command::Global(a) => &a.output,
    };
    write_output(target, &outcome.text)?;
    if outcome.violation {
        Err(CliError::Violation)
    } else {
        Ok(())
    }
}

/// Runs a command and returns its output without writing it.
pub fn execute(command: &Command, exec: Exec) -> Result<Outcome, CliError> {
    let conn = GaloisConnection::standard().with_exec(exec);
    match command {
        Command::Right(a) => cmd_right(&conn, &read_document(&a.input)?, a.enumerate),
        Command::Left(a) => cmd_left(&conn, &read_document(&a.input)?, a.enumerate, a.explain),
        Command::Check(a) => cmd_check(a, exec),
        Command::Table {
            action: TableAction::Dump(_),
        } => Ok(Outcome::ok(TranslationTable::standard().to_csv())),
        Command::NormDemo(_) => Ok(Outcome::ok(format_norm_report(&analysis::norm_demo(&conn)))),
        Command::FindEmpty(a) => Ok(cmd_find_empty(&conn, a)),
        Command::Global(a) => cmd_global(&read_document(&a.input)?, a),
    }
}

fn read_document(args: &InArgs) -> Result<Document, CliError> {
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::read_to_string(std::io::stdin())
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?,
    };
    Ok(Document::parse(&text)?)
}

fn write_output(args: &OutArgs, text: &str) -> Result<(), CliError> {
    match &args.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

/// Box document. `allowed` lists the per-factor sets before an empty one
/// collapses the box, so the emptying factor stays visible.
pub fn spp_box_value(allowed: [SignatureSet; 8], enumerate: usize) -> Value {
    let b = FactorBox::from_allowed(allowed);
    let allowed: Map<String, Value> = Factor::ALL
        .iter()
        .zip(allowed)
        .map(|(&g, set)| {
            let sigs: Vec<&str> = set.iter().map(|s| s.token()).collect();
            (g.token().to_string(), json!(sigs))
        })
        .collect();
    json!({
        "type": "spp_box",
        "allowed": allowed,
        "cardinality": b.cardinality().to_string(),
        "sample": b.enumerate(enumerate).iter().map(doc::spp_value).collect::<Vec<_>>(),
    })
}

/// Trait-box counterpart of [`spp_box_value`].
pub fn trait_box_value(allowed: [ValueSet; 28], enumerate: usize) -> Value {
    let b = TraitBox::from_allowed(allowed);
    let allowed: Map<String, Value> = TraitId::ALL
        .iter()
        .zip(allowed)
        .map(|(&t, set)| {
            let values: Vec<u8> = set.iter().map(|v| v.get()).collect();
            (t.token().to_string(), json!(values))
        })
        .collect();
    json!({
        "type": "trait_box",
        "allowed": allowed,
        "cardinality": b.cardinality().to_string(),
        "sample": b.enumerate(enumerate).iter().map(doc::ppp_value).collect::<Vec<_>>(),
    })
}

pub fn cmd_right(
    conn: &GaloisConnection<'_>,
    input: &Document,
    enumerate: usize,
) -> Result<Outcome, CliError> {
    let fs: Vec<CattellProfile> = match input {
        Document::Ppp(f) => vec![*f],
        Document::PppSet(fs) => fs.clone(),
        other => {
            return Err(CliError::Input(format!(
                "right expects a ppp or ppp_set document, got {}",
                other.kind()
            )))
        }
    };
    let sets = conn.right_allowed_sets(&fs);
    Ok(Outcome::ok(line(&spp_box_value(sets, enumerate))))
}

pub fn cmd_left(
    conn: &GaloisConnection<'_>,
    input: &Document,
    enumerate: usize,
    explain: bool,
) -> Result<Outcome, CliError> {
    let ps: Vec<SzondiProfile> = match input {
        Document::Spp(p) => vec![*p],
        Document::SppSet(ps) => ps.clone(),
        other => {
            return Err(CliError::Input(format!(
                "left expects an spp or spp_set document, got {}",
                other.kind()
            )))
        }
    };
    let mut v = trait_box_value(conn.left_allowed_sets(&ps), enumerate);
    if explain {
        let explanation: Vec<Value> = analysis::explain_left(conn, &ps)
            .iter()
            .map(|e| {
                json!({
                    "trait": e.trait_id.token(),
                    "cells": e.cells.iter().map(|c| json!({
                        "value": c.value.get(),
                        "formula": c.formula.to_string(),
                        "holds": c.holds,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        v["explanation"] = json!(explanation);
    }
    Ok(Outcome::ok(line(&v)))
}

fn parse_cell(spec: &str) -> Result<(TraitId, TraitValue, Formula), CliError> {
    let bad = |m: String| CliError::Input(format!("corruption {spec:?}: {m}"));
    let mut parts = spec.splitn(3, ',');
    let (Some(t), Some(v), Some(phi)) = (parts.next(), parts.next(), parts.next()) else {
        return Err(bad("expected TRAIT,VALUE,FORMULA".into()));
    };
    let t: TraitId = t.trim().parse().map_err(|e| bad(format!("{e}")))?;
    let v: i64 = v
        .trim()
        .parse()
        .map_err(|_| bad("value is not an integer".into()))?;
    let v = TraitValue::new(v).map_err(|e| bad(format!("{e}")))?;
    let phi: Formula = phi.trim().parse().map_err(|e| bad(format!("{e}")))?;
    Ok((t, v, phi))
}

pub fn cmd_check(args: &CheckArgs, exec: Exec) -> Result<Outcome, CliError> {
    let mut table = TranslationTable::standard().clone();
    for spec in &args.inject_corruption {
        let (t, v, phi) = parse_cell(spec)?;
        table = table.with_cell(t, v, phi);
    }
    let conn = GaloisConnection::new(&table)
        .map_err(|e| CliError::Input(e.to_string()))?
        .with_exec(exec);
    let cfg = CheckConfig {
        trials: args.trials,
        seed: args.seed,
        reversal: if args.corrected_reversal {
            Reversal::Corrected
        } else {
            Reversal::AsPrinted
        },
    };
    let reports = checks::run_all(&conn, &cfg);
    let mut text = String::new();
    for r in &reports {
        writeln!(text, "{r}").unwrap();
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(
        text,
        "{} suites, {failed} failed (seed {})",
        reports.len(),
        args.seed
    )
    .unwrap();
    Ok(Outcome {
        text,
        violation: failed > 0,
    })
}

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn format_norm_report(r: &NormReport) -> String {
    let mut s = String::new();
    writeln!(s, "norm profile: {}", r.profile).unwrap();
    writeln!(s, "p(norm) = {}", r.formula).unwrap();
    if r.left.is_empty() {
        writeln!(s, "left polarity: EMPTY").unwrap();
    } else {
        writeln!(s, "left polarity: {} profiles", r.left.cardinality()).unwrap();
    }
    writeln!(
        s,
        "failing traits ({}): {}",
        r.failing.len(),
        list(&r.failing)
    )
    .unwrap();
    if !r.reference_only.is_empty() {
        writeln!(
            s,
            "listed as failing in the reference text but satisfiable:"
        )
        .unwrap();
        for (t, values) in &r.reference_only {
            writeln!(s, "  {t} at {}", list(values.iter())).unwrap();
        }
    }
    if !r.computed_only.is_empty() {
        writeln!(
            s,
            "failing but not listed in the reference text: {}",
            list(&r.computed_only)
        )
        .unwrap();
    }
    for e in &r.explanations {
        writeln!(s, "trait {}:", e.trait_id).unwrap();
        for c in &e.cells {
            writeln!(s, "  {:>2}  {}  {}", c.value, c.holds[0], c.formula).unwrap();
        }
    }
    s
}

pub fn cmd_find_empty(conn: &GaloisConnection<'_>, args: &FindEmptyArgs) -> Outcome {
    let r = analysis::find_empty(conn, args.samples, args.seed);
    let mut s = String::new();
    writeln!(
        s,
        "sampled {} uniform profiles (seed {})",
        r.samples, r.seed
    )
    .unwrap();
    writeln!(s, "empty right polarity: {}", r.empty.len()).unwrap();
    let pairs = r.pair_counts();
    if !pairs.is_empty() {
        writeln!(s, "most frequent conflicting pairs:").unwrap();
        for ((g, a, b), n) in pairs.iter().take(10) {
            writeln!(s, "  {a}/{b} on {g}: {n}").unwrap();
        }
    }
    for image in r.empty.iter().take(args.show) {
        writeln!(s, "sample {}: {}", image.sample, image.profile).unwrap();
        for c in &image.conflicts {
            let cells = c.cells.iter().map(|(t, v)| format!("{t}={v}"));
            writeln!(
                s,
                "  {}: {}",
                c.factor,
                cells.collect::<Vec<_>>().join(" vs ")
            )
            .unwrap();
        }
    }
    Outcome::ok(s)
}

pub fn cmd_global(input: &Document, args: &GlobalArgs) -> Result<Outcome, CliError> {
    let Document::Spp(p) = input else {
        return Err(CliError::Input(format!(
            "global expects an spp document, got {}",
            input.kind()
        )));
    };
    let v = TraitValue::new(args.value).map_err(|e| CliError::Input(e.to_string()))?;
    let reversal = if args.corrected_reversal {
        Reversal::Corrected
    } else {
        Reversal::AsPrinted
    };
    let table = TranslationTable::standard();
    let mut s = String::new();
    for g in GlobalFactor::ALL {
        let phi = table
            .global_factor_formula(g, v, reversal)
            .map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(s, "{g} {v} {} {phi}", phi.eval(p)).unwrap();
    }
    Ok(Outcome::ok(s))
}
