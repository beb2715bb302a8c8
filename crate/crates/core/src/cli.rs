//! Command-line front end.
//!
//! ```text
//! flatpair [--tol T] [--json] distance <file>
//! flatpair [--tol T] [--json] pair <file>
//! flatpair [--tol T] [--json] gram <file>
//! flatpair [--tol T] [--json] check <file> [--max-iter N] [--samples N] [--seed S]
//! ```
//!
//! Exit codes: 0 success, 2 unreadable or invalid input, 3 oracle
//! disagreement (`check` only), 4 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::flats::{self, Flat};
use crate::instance::InstanceFile;
use crate::linalg;
use crate::oracle::{self, OracleConfig};
use crate::solver::{self, PairSolution, DEFAULT_RANK_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Digits after the decimal point in text output.
pub const TEXT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "flatpair",
    version,
    about = "Optimal pair and distance between two flats"
)]
struct Cli {
    /// Relative rank tolerance (overrides the instance file).
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the distance and the Gram-ratio squared distance.
    Distance(FileArg),
    /// Print the optimal pair, its coefficients and diagnostics.
    Pair(FileArg),
    /// Print the Gram matrix and the Gram determinants.
    Gram(FileArg),
    /// Cross-check the solver against alternating projections and sampling.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct FileArg {
    file: PathBuf,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    /// Iteration cap for alternating projections.
    #[arg(long, default_value_t = OracleConfig::default().max_iter)]
    max_iter: usize,
    /// Number of random point pairs for the sampled upper bound.
    #[arg(long, default_value_t = OracleConfig::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) | Error::SingularSystem { .. } => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Exit code for a library error surfacing at the command line.
pub fn exit_code_for(e: &Error) -> i32 {
    match Failure::from(e.clone()) {
        Failure::Input(_) => EXIT_INPUT,
        Failure::Internal(_) => EXIT_INTERNAL,
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let _ = writeln!(err, "{}", msg.lines().next().unwrap_or("usage error"));
            return EXIT_INPUT;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {}", one_line(&msg));
            EXIT_INPUT
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {}", one_line(&msg));
            EXIT_INTERNAL
        }
    }
}

fn one_line(msg: &str) -> String {
    msg.split_whitespace().collect::<Vec<_>>().join(" ")
}

struct Loaded {
    instance: InstanceFile,
    vb: Flat,
    vc: Flat,
    tol: f64,
}

fn load(path: &Path, tol_override: Option<f64>) -> Result<Loaded, Failure> {
    let mut instance = InstanceFile::load(path).map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(tol) = tol_override {
        instance.rank_tol = Some(tol);
        instance.validate()?;
    }
    let tol = instance.rank_tol.unwrap_or(DEFAULT_RANK_TOL);
    let (vb, vc) = instance.to_flats()?;
    Ok(Loaded {
        instance,
        vb,
        vc,
        tol,
    })
}

fn solve_checked(l: &Loaded) -> Result<PairSolution, Failure> {
    let sol = solver::optimal_pair(&l.vb, &l.vc, l.tol)?;
    solver::verify_solution(&l.vb, &l.vc, &sol)?;
    Ok(sol)
}

/// Gram-ratio squared distance, or `None` when `A` is rank deficient.
fn gram_ratio(l: &Loaded) -> Result<Option<f64>, Failure> {
    match solver::distance_squared_gram(&l.vb, &l.vc, l.tol) {
        Ok(v) => Ok(Some(v)),
        Err(Error::RankDeficient { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Internal(format!("write failed: {e}"));
    match &cli.command {
        Command::Distance(a) => {
            let l = load(&a.file, cli.tol)?;
            let sol = solve_checked(&l)?;
            let ratio = gram_ratio(&l)?;
            if cli.json {
                let doc = json!({
                    "instance": l.instance,
                    "distance": sol.distance,
                    "distance_sq_gram": ratio,
                });
                write_json(out, &doc).map_err(io)?;
            } else {
                writeln!(out, "distance: {}", fixed(sol.distance)).map_err(io)?;
                writeln!(out, "distance_sq_gram: {}", opt_fixed(ratio)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Pair(a) => {
            let l = load(&a.file, cli.tol)?;
            let sol = solve_checked(&l)?;
            if cli.json {
                write_json(out, &PairDocument::new(&l.instance, &sol)).map_err(io)?;
            } else {
                write_pair_text(out, &sol).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Gram(a) => {
            let l = load(&a.file, cli.tol)?;
            let problem = flats::difference_setup(&l.vb, &l.vc)?;
            let cols = problem.a.to_columns();
            let (g_rows, g_a, g_da) = if cols.is_empty() {
                (Vec::new(), 1.0, linalg::norm_sq(&problem.d))
            } else {
                let g = linalg::gram_matrix(&cols)?;
                let g_a = linalg::gram_determinant_of(&g)?.value;
                let mut with_d = vec![problem.d.clone()];
                with_d.extend(cols.iter().cloned());
                (g.to_rows(), g_a, linalg::gram_determinant(&with_d)?)
            };
            if cli.json {
                let doc = json!({
                    "instance": l.instance,
                    "gram_matrix": g_rows,
                    "gram_det": g_a,
                    "gram_det_with_d": g_da,
                });
                write_json(out, &doc).map_err(io)?;
            } else {
                let n = g_rows.len();
                writeln!(out, "G ({n}x{n}):").map_err(io)?;
                for row in &g_rows {
                    writeln!(out, "  {}", fixed_vec(row)).map_err(io)?;
                }
                writeln!(out, "g(a_1..a_n): {}", fixed(g_a)).map_err(io)?;
                writeln!(out, "g(d, a_1..a_n): {}", fixed(g_da)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check(a) => {
            let l = load(&a.file, cli.tol)?;
            let sol = solve_checked(&l)?;
            let cfg = OracleConfig {
                max_iter: a.max_iter.max(1),
                samples: a.samples.max(1),
                seed: a.seed,
                ..OracleConfig::default()
            };
            let report = oracle::cross_check(&l.vb, &l.vc, &sol, &cfg);
            if cli.json {
                let doc = json!({
                    "instance": l.instance,
                    "distance": sol.distance,
                    "unique": sol.diagnostics.unique,
                    "path": sol.diagnostics.path,
                    "oracle": report,
                    "agreement": report.agreement,
                });
                write_json(out, &doc).map_err(io)?;
            } else {
                writeln!(out, "distance: {}", fixed(sol.distance)).map_err(io)?;
                writeln!(out, "path: {}", sol.diagnostics.path).map_err(io)?;
                writeln!(out, "unique: {}", sol.diagnostics.unique).map_err(io)?;
                writeln!(
                    out,
                    "ap_distance: {} (iterations {}, converged {})",
                    fixed(report.ap_distance),
                    report.iterations,
                    report.ap_converged
                )
                .map_err(io)?;
                writeln!(out, "sample_min: {}", fixed(report.sample_min)).map_err(io)?;
                writeln!(out, "agreement: {}", report.agreement).map_err(io)?;
            }
            Ok(if report.agreement {
                EXIT_OK
            } else {
                EXIT_DISAGREEMENT
            })
        }
    }
}

/// Machine-readable `pair` output. Field names follow [`PairSolution`].
#[derive(Debug, Serialize)]
struct PairDocument<'a> {
    instance: &'a InstanceFile,
    #[serde(flatten)]
    solution: &'a PairSolution,
}

impl<'a> PairDocument<'a> {
    fn new(instance: &'a InstanceFile, solution: &'a PairSolution) -> Self {
        Self { instance, solution }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(doc).map_err(std::io::Error::other)?;
    writeln!(out, "{text}")
}

fn write_pair_text(out: &mut dyn Write, sol: &PairSolution) -> std::io::Result<()> {
    let d = &sol.diagnostics;
    writeln!(out, "b_star: {}", fixed_vec(&sol.b_star))?;
    writeln!(out, "c_star: {}", fixed_vec(&sol.c_star))?;
    writeln!(out, "u_star: {}", fixed_vec(&sol.u_star))?;
    writeln!(out, "v_star: {}", fixed_vec(&sol.v_star))?;
    writeln!(out, "distance: {}", fixed(sol.distance))?;
    writeln!(out, "distance_sq_gram: {}", fixed(sol.distance_sq_gram))?;
    writeln!(out, "path: {}", d.path)?;
    writeln!(out, "gram_det: {}", fixed(d.gram_det))?;
    writeln!(out, "unique: {}", d.unique)?;
    writeln!(out, "rank_used: {}", d.rank_used)?;
    writeln!(out, "dropped_columns: {:?}", d.dropped_columns)?;
    writeln!(out, "clamp_fired: {}", d.clamp_fired)
}

/// Fixed notation with [`TEXT_DIGITS`] decimals; negative zero prints as zero.
pub fn fixed(x: f64) -> String {
    let s = format!("{:.*}", TEXT_DIGITS, x);
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn opt_fixed(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a (rank deficient)".to_string(), fixed)
}

fn fixed_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| fixed(x)).collect();
    format!("[{}]", parts.join(", "))
}
