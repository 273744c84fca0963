//! Command-line front end for `coxwalls`.
//!
//! Every subcommand produces a [`RunReport`]. Commands with a side artifact
//! (`ball`, `tiling-svg`, `cayley-dot`) write the artifact to `--out` and the
//! report to stdout, or the artifact alone to stdout when `--out` is absent.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod dot;
pub mod report;
pub mod svg;

pub use report::{CheckResult, RunReport, SystemDigest};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "coxwalls", version, about = "Coxeter groups, parabolic subgroups and their chamber geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

/// Comma-separated generator indices; the empty string is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexList(pub Vec<usize>);

fn parse_index_list(s: &str) -> Result<IndexList, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(IndexList(Vec::new()));
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("`{p}` is not a generator index")))
        .collect::<Result<Vec<_>, _>>()
        .map(IndexList)
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Coxeter matrix file, text or JSON.
    #[arg(long, global = true, value_name = "FILE")]
    system: Option<PathBuf>,
    /// Generator subset, e.g. `0,2`.
    #[arg(long, global = true, value_name = "I,J,...", value_parser = parse_index_list)]
    subset: Option<IndexList>,
    #[arg(long, global = true, value_name = "N")]
    radius: Option<usize>,
    /// Word as generator indices, e.g. `0,1,0`.
    #[arg(long, global = true, value_name = "I,J,...", value_parser = parse_index_list)]
    word: Option<IndexList>,
    #[arg(long, global = true, value_name = "N")]
    trials: Option<usize>,
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Slack on the gallery distance bound.
    #[arg(long, global = true, value_name = "X", allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Generator for `wset`.
    #[arg(long, global = true, value_name = "S")]
    s0: Option<usize>,
    /// Half-width of the sample box for `verify halfspace`.
    #[arg(long, global = true, value_name = "X")]
    box_radius: Option<f64>,
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Parse and describe a Coxeter matrix.
    Validate,
    /// Enumerate a ball as JSON lines.
    Ball,
    /// Normal form of `--word`.
    Reduce,
    /// Minimal coset representative of `--word` for `--subset`.
    Coset,
    /// Sphericity of `--subset` by enumeration and by the cosine form.
    Spherical,
    /// Essential subset of `--subset`.
    Essential,
    /// Whether the group splits off the essential part of `--subset`.
    SplitCheck,
    /// Finite index of the parabolic subgroup on `--subset`.
    FiniteIndex,
    /// Elements whose right descents lie in `{s0}`, with a density profile.
    Wset,
    /// Run a geometric verification.
    Verify { check: Check },
    /// Render the planar chamber tiling.
    TilingSvg,
    /// Cayley graph of a ball in DOT.
    CayleyDot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Lemma0,
    Lemma1,
    Lemma31,
    Lemma32,
    Geodesic,
    Convexity,
    Halfspace,
    Limits,
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::Ball => "ball".into(),
            Command::Reduce => "reduce".into(),
            Command::Coset => "coset".into(),
            Command::Spherical => "spherical".into(),
            Command::Essential => "essential".into(),
            Command::SplitCheck => "split-check".into(),
            Command::FiniteIndex => "finite-index".into(),
            Command::Wset => "wset".into(),
            Command::Verify { check } => {
                format!("verify {}", check.to_possible_value().expect("named variant").get_name())
            }
            Command::TilingSvg => "tiling-svg".into(),
            Command::CayleyDot => "cayley-dot".into(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{flag}: {message}")]
    Usage { flag: &'static str, message: String },
    #[error("{0}")]
    Input(String),
}

impl From<coxwalls::CoxeterError> for CliError {
    fn from(e: coxwalls::CoxeterError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<coxwalls::geometry::GeometryError> for CliError {
    fn from(e: coxwalls::geometry::GeometryError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<coxwalls::parabolic::ParabolicError> for CliError {
    fn from(e: coxwalls::parabolic::ParabolicError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// What a command produced.
pub(crate) struct Output {
    report: RunReport,
    artifact: Option<String>,
}

/// Runs the command line `argv` (program name first) against the process's
/// stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    let output = match commands::execute(&cli.command, &cli.opts) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let Output { mut report, artifact } = output;
    if cli.opts.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    match emit(&report, artifact, cli.opts.out.as_deref(), stdout) {
        Ok(()) if report.pass => EXIT_PASS,
        Ok(()) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn write_file(path: &Path, data: &str) -> Result<(), String> {
    std::fs::write(path, data).map_err(|e| format!("--out: cannot write {}: {e}", path.display()))
}

fn write_stdout(stdout: &mut dyn Write, data: &str) -> Result<(), String> {
    stdout.write_all(data.as_bytes()).map_err(|e| format!("writing output: {e}"))
}

fn emit(
    report: &RunReport,
    artifact: Option<String>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), String> {
    match (artifact, out) {
        (Some(a), Some(path)) => {
            write_file(path, &a)?;
            write_stdout(stdout, &report.to_json())
        }
        (Some(a), None) => write_stdout(stdout, &a),
        (None, Some(path)) => write_file(path, &report.to_json()),
        (None, None) => write_stdout(stdout, &report.to_json()),
    }
}
