//! The `etale-rgamma` command line.
//!
//! Every command reads one JSON document (`--in`, or standard input) and
//! writes one result document (`--out`, or standard output) as JSON or as
//! plain text. Exit status is 0 on success, 1 when the input is well formed
//! but fails a hypothesis or a computation, and 2 when it does not match
//! the schema. Output depends only on the input: it is byte-identical
//! across runs and across `--jobs` settings. The environment variable
//! `ETALE_RGAMMA_SEED` is reserved and ignored, since nothing is random.

mod commands;
pub mod corpus;
mod pullback_doc;
mod report;
mod selftest;
mod text;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

pub use pullback_doc::{ComparisonDoc, PullbackDoc};
pub use report::*;
pub use selftest::run_selftest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Check the hypotheses on the input and report every violation.
    Validate,
    /// The complex computing cohomology on the whole curve.
    Rgamma,
    /// As `rgamma`, with the action of the Galois generator.
    Equivariant,
    /// Descend the equivariant complex to the base field.
    Descend,
    /// The map induced by a comparison of two inputs.
    Pullback,
    /// Group realization and stabilizers on an explicit point model.
    Inertia,
    /// Run the bundled regression corpus.
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Rgamma => "rgamma",
            Command::Equivariant => "equivariant",
            Command::Descend => "descend",
            Command::Pullback => "pullback",
            Command::Inertia => "inertia",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// An inclusive range of degrees `LO:HI` to include in the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeRange {
    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }
}

impl std::str::FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, found {s:?}"))?;
        let lo: i64 = a.trim().parse().map_err(|e| format!("bad lower degree {a:?}: {e}"))?;
        let hi: i64 = b.trim().parse().map_err(|e| format!("bad upper degree {b:?}: {e}"))?;
        if lo > hi {
            return Err(format!("empty degree range {lo}:{hi}"));
        }
        Ok(DegreeRange { lo, hi })
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "etale-rgamma", version, about = "Cohomology of constructible sheaves on curves from Galois cover data")]
#[command(after_help = "Exit status: 0 success, 1 validation or computation failure, 2 schema error.\n\
ETALE_RGAMMA_SEED is reserved and ignored: every computation is deterministic.")]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,
    /// Input document; standard input when omitted.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for per-branch computations.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Include cohomology representatives.
    #[arg(long)]
    pub emit_reps: bool,
    /// Only report degrees in LO:HI (inclusive).
    #[arg(long, value_name = "LO:HI")]
    pub degrees: Option<DegreeRange>,
}

/// Options shared by the computing commands.
#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub jobs: usize,
    pub emit_reps: bool,
    pub degrees: Option<DegreeRange>,
}

impl Options {
    pub fn keep(&self, d: i64) -> bool {
        self.degrees.is_none_or(|r| r.contains(d))
    }
}

impl From<&Args> for Options {
    fn from(a: &Args) -> Self {
        Options { jobs: a.jobs as usize, emit_reps: a.emit_reps, degrees: a.degrees }
    }
}

/// Why a command did not produce its result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// The input does not match the schema (exit 2).
    Schema { path: String, message: String },
    /// The input violates a hypothesis (exit 1).
    Invalid { message: String, issues: Vec<IssueReport> },
    /// The computation itself failed (exit 1).
    Compute(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Schema { .. } => 2,
            Failure::Invalid { .. } | Failure::Compute(_) => 1,
        }
    }

    fn status(&self) -> &'static str {
        match self {
            Failure::Schema { .. } => "schema_error",
            Failure::Invalid { .. } => "invalid",
            Failure::Compute(_) => "error",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Schema { path, message } => write!(f, "schema error at {path}: {message}"),
            Failure::Invalid { message, issues } => {
                write!(f, "{message}")?;
                for i in issues {
                    write!(f, "\n  {}: {} ({})", i.location, i.hypothesis, i.detail)?;
                }
                Ok(())
            }
            Failure::Compute(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Serialize)]
struct FailureDoc<'a> {
    command: &'a str,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<&'a str>,
    message: String,
    #[serde(skip_serializing_if = "<[IssueReport]>::is_empty")]
    issues: &'a [IssueReport],
}

/// What an invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    /// The result document (or the failure document).
    pub output: String,
    /// A one-line summary for standard error; empty on success.
    pub diagnostic: String,
}

/// Run a command on input text that has already been read.
pub fn run_on_text(command: Command, text: &str, format: Format, opts: &Options) -> Outcome {
    let result = match command {
        Command::Validate => commands::validate_cmd(text).map(Document::Validate),
        Command::Rgamma => commands::rgamma(text, opts).map(Document::RGamma),
        Command::Equivariant => commands::equivariant(text, opts).map(Document::RGamma),
        Command::Descend => commands::descend(text, opts).map(Document::Descend),
        Command::Pullback => commands::pullback(text, opts).map(Document::Pullback),
        Command::Inertia => commands::inertia(text).map(Document::Inertia),
        Command::Selftest => Ok(Document::Selftest(run_selftest())),
    };
    match result {
        Ok(doc) => {
            let code = doc.exit_code();
            let diagnostic = if code == 0 { String::new() } else { doc.summary() };
            Outcome { code, output: render(&doc, format), diagnostic }
        }
        Err(f) => {
            let message = match &f {
                Failure::Schema { message, .. } => message.clone(),
                Failure::Invalid { message, .. } => message.clone(),
                Failure::Compute(m) => m.clone(),
            };
            let (path, issues): (Option<&str>, &[IssueReport]) = match &f {
                Failure::Schema { path, .. } => (Some(path), &[]),
                Failure::Invalid { issues, .. } => (None, issues),
                Failure::Compute(_) => (None, &[]),
            };
            let doc = FailureDoc { command: command.name(), status: f.status(), path, message, issues };
            let output = match format {
                Format::Json => to_json(&doc),
                Format::Text => format!("{}: {f}\n", command.name()),
            };
            Outcome { code: f.exit_code(), output, diagnostic: f.to_string() }
        }
    }
}

/// Run a parsed command line, reading the input file if needed. Writing
/// the output is left to the caller.
pub fn run(args: &Args) -> Outcome {
    let opts = Options::from(args);
    let text = if args.command == Command::Selftest {
        String::new()
    } else {
        let read = match &args.input {
            Some(p) => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
            None => {
                let mut s = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                    .map(|_| s)
                    .map_err(|e| format!("cannot read standard input: {e}"))
            }
        };
        match read {
            Ok(t) => t,
            Err(message) => {
                let f = Failure::Schema { path: "input".into(), message };
                return Outcome { code: f.exit_code(), output: String::new(), diagnostic: f.to_string() };
            }
        }
    };
    run_on_text(args.command, &text, args.format, &opts)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => match doc {
            Document::Validate(r) => to_json(r),
            Document::RGamma(r) => to_json(r),
            Document::Descend(r) => to_json(r),
            Document::Pullback(r) => to_json(r),
            Document::Inertia(r) => to_json(r),
            Document::Selftest(r) => to_json(r),
        },
        Format::Text => match doc {
            Document::Validate(r) => text::validate(r),
            Document::RGamma(r) => text::rgamma(r),
            Document::Descend(r) => text::descend(r),
            Document::Pullback(r) => text::pullback(r),
            Document::Inertia(r) => text::inertia(r),
            Document::Selftest(r) => text::selftest(r),
        },
    }
}
