//! Command-line front end. `run` does all the work so that tests can drive
//! it in-process; the binary only forwards `std::env::args_os`.

mod render;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::domain::{RationalAngle, TorusKnot};
use crate::error::Error;
use crate::lattice;
use crate::maxsig;
use crate::verify::{self, Suite, SuiteSummary, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Bumped whenever a field of any JSON document changes.
pub const SCHEMA_VERSION: &str = "1";

/// Environment variable read for the oracle tolerance when `--tol` is absent.
pub const TOL_ENV: &str = "TORSIG_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "torsig",
    version,
    about = "Levine-Tristram and maximum signatures of torus knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Signature sigma_t of T(p,q) at an exact angle t = n/d.
    Sig(SigArgs),
    /// Classical signature, distance profile, balanced sequence and maximum signature.
    Max(MaxArgs),
    /// The whole signature function as a step function.
    Sweep(SweepArgs),
    /// Check identities and oracles over a grid of coprime pairs.
    Verify(VerifyArgs),
    /// Grid of sigma, M, sigma_hat and the 4-genus bound.
    Table(TableArgs),
}

#[derive(Debug, Args)]
struct KnotArgs {
    #[arg(short = 'p', allow_negative_numbers = true)]
    p: i64,
    #[arg(short = 'q', allow_negative_numbers = true)]
    q: i64,
}

impl KnotArgs {
    fn knot(&self) -> Result<TorusKnot, Error> {
        TorusKnot::new(self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RecordFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SigArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Angle as an exact fraction n/d in (0, 1).
    #[arg(short = 't')]
    t: RationalAngle,
    #[arg(long, value_enum, default_value = "text")]
    format: RecordFormat,
}

#[derive(Debug, Args)]
struct MaxArgs {
    #[command(flatten)]
    knot: KnotArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: RecordFormat,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    knot: KnotArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: SweepFormat,
    /// Write to this file instead of standard output.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value_t = 10)]
    p_max: u32,
    #[arg(long, default_value_t = 30)]
    q_max: u32,
    /// Worker threads. Output does not depend on it.
    #[arg(long, short = 'j')]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Comma-separated suites; all of them if omitted.
    #[arg(long, value_delimiter = ',')]
    which: Vec<Suite>,
    /// Relative eigenvalue cutoff for the Hermitian oracle. Overrides TORSIG_TOL.
    #[arg(long)]
    tol: Option<f64>,
    /// Angles per knot for the Hermitian oracle.
    #[arg(long, default_value_t = 25)]
    samples: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: RecordFormat,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    /// The command ran but something it checked did not hold.
    Check,
    /// An internal invariant broke.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_FAILURE,
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Sig(a) => cmd_sig(a, out),
        Command::Max(a) => cmd_max(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Table(a) => cmd_table(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io(format!("cannot write output: {e}")))
}

fn emit_to(path: Option<&PathBuf>, out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => emit(out, text),
    }
}

fn cmd_sig(a: SigArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let knot = a.knot.knot()?;
    let count = lattice::annulus_count(&knot, &a.t);
    let sigma = lattice::lt_signature(&knot, &a.t);
    let text = match a.format {
        RecordFormat::Text => render::sig_text(&knot, &a.t, sigma, &count),
        RecordFormat::Json => render::sig_json(&knot, &a.t, sigma, &count),
    };
    emit(out, &text)
}

fn cmd_max(a: MaxArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let knot = a.knot.knot()?;
    let analysis = maxsig::analyze(&knot).map_err(|e| Failure::Internal(e.to_string()))?;
    let text = match a.format {
        RecordFormat::Text => render::max_text(&analysis),
        RecordFormat::Json => render::max_json(&analysis),
    };
    emit(out, &text)
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let knot = a.knot.knot()?;
    let sf = lattice::signature_step_function(&knot);
    let text = match a.format {
        SweepFormat::Csv => render::sweep_csv(&sf),
        SweepFormat::Json => render::sweep_json(&sf),
        SweepFormat::Plot => render::sweep_plot(&sf),
    };
    emit_to(a.output.as_ref(), out, &text)
}

/// Runs `f` on a pool of `jobs` threads, or on the global pool.
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".to_string())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Usage(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("{TOL_ENV}={s:?} is not a number")))?,
            Err(_) => crate::oracle::DEFAULT_TOLERANCE,
        },
    };
    if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
        return Err(Failure::Usage(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    Ok(tol)
}

fn check_grid(g: &GridArgs) -> Result<(), Failure> {
    if g.p_max < 2 || g.q_max <= g.p_max.min(2) {
        return Err(Failure::Usage(format!(
            "empty grid: need p-max >= 2 and q-max > 2, got {} and {}",
            g.p_max, g.q_max
        )));
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    check_grid(&a.grid)?;
    let cfg = VerifyConfig {
        p_max: a.grid.p_max,
        q_max: a.grid.q_max,
        tolerance: tolerance(a.tol)?,
        samples: a.samples,
    };
    let suites: Vec<Suite> = if a.which.is_empty() {
        Suite::ALL.to_vec()
    } else {
        let mut s = a.which.clone();
        s.sort();
        s.dedup();
        s
    };
    let summaries: Vec<SuiteSummary> = with_jobs(a.grid.jobs, || {
        suites.iter().map(|&s| verify::run_suite(s, &cfg)).collect()
    })?;
    let text = match a.format {
        RecordFormat::Text => render::verify_text(&summaries),
        RecordFormat::Json => render::verify_json(&cfg, &summaries),
    };
    emit(out, &text)?;
    if summaries.iter().all(SuiteSummary::all_passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<(), Failure> {
    check_grid(&a.grid)?;
    let pairs = verify::coprime_pairs(a.grid.p_max, a.grid.q_max);
    let rows: Vec<maxsig::MaxSignature> = with_jobs(a.grid.jobs, || {
        pairs
            .par_iter()
            .map(|&(p, q)| {
                let knot = TorusKnot::new(p, q).expect("grid pairs are coprime");
                maxsig::analyze(&knot)
            })
            .collect::<Result<Vec<_>, Error>>()
    })?
    .map_err(|e| Failure::Internal(e.to_string()))?;
    let text = match a.format {
        TableFormat::Csv => render::table_csv(&rows),
        TableFormat::Json => render::table_json(&rows),
    };
    emit_to(a.output.as_ref(), out, &text)
}

/// Entry point for the binary.
pub fn main() -> ! {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("torsig").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn sig_examples() {
        let (code, out, _) = call(&["sig", "-p", "4", "-q", "7", "-t", "1/4"]);
        assert_eq!(code, 0);
        assert!(out.contains("sigma=10\n"), "{out}");
        let (code, _, err) = call(&["sig", "-p", "4", "-q", "6", "-t", "1/2"]);
        assert_eq!(code, 2);
        assert!(err.contains("p and q must be coprime"), "{err}");
    }

    #[test]
    fn usage_errors_exit_two() {
        for args in [
            &["sig", "-p", "2", "-q", "3", "-t", "0.5"][..],
            &["sig", "-p", "2", "-q", "3", "-t", "3/2"],
            &["sig", "-p", "0", "-q", "3", "-t", "1/2"],
            &["max", "-p", "2"],
            &["verify", "--which", "nope"],
            &["verify", "--jobs", "0", "--which", "glm"],
            &["verify", "--tol", "-1", "--which", "glm"],
            &["frobnicate"],
        ] {
            let (code, _, err) = call(args);
            assert_eq!(code, 2, "{args:?}");
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sweep"));
    }

    #[test]
    fn flag_tolerance_wins() {
        assert_eq!(tolerance(Some(1e-6)).unwrap(), 1e-6);
        assert!(tolerance(Some(f64::NAN)).is_err());
    }
}
