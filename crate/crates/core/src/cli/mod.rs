//! Command-line interface of the `ratl2` binary.
//!
//! Exit status is 0 on success, 1 on configuration or usage errors and 2
//! when a numerical procedure did not converge. `solve` still writes its
//! run record in the last case.

mod config;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{DegreeSpec, ExperimentConfig, MAX_DEGREE};
pub use run::{
    criterion, report, report_dir, run_path, solve, verify, write_atomic, CriterionRow, DegreeRun, RunRecord,
    VerifyReport,
};

use crate::certify::SignedMeasureSamples;
use crate::error::{Error, Result};

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "RATL2_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ratl2", version, about = "Critical points of rational L2 approximation on the unit circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search for critical points at every configured degree.
    Solve {
        #[arg(short, long)]
        config: PathBuf,
    },
    /// Check strong asymptotics and pole statistics of a run.
    Verify {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        run: PathBuf,
    },
    /// Check the comparison criterion for the best record of each degree.
    Criterion {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        run: PathBuf,
        /// Samples of the measure ν̌; `2ω` if absent.
        #[arg(long)]
        nu: Option<PathBuf>,
        /// Use the record itself as the comparison function.
        #[arg(long)]
        self_check: bool,
    },
    /// Write plot-ready tables of a run.
    Report {
        #[arg(short, long)]
        run: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return 1;
    }
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence(_) | Error::Resolution(_) => 2,
        _ => 1,
    }
}

/// Caps the global thread pool at `RATL2_THREADS` if set. A pool that is
/// already running is left alone.
fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Invalid(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("config {}: {e}", path.display())))?;
    ExperimentConfig::from_json(&text)
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Solve { config } => {
            let cfg = load_config(&config)?;
            let (run, path) = solve(&cfg)?;
            println!("{}", path.display());
            for d in &run.degrees {
                eprintln!(
                    "degree {}: {}/{} starts converged, {} distinct critical points",
                    d.degree,
                    d.converged,
                    d.starts,
                    d.records.len()
                );
                if let Some(w) = &d.audit.warning {
                    eprintln!("warning: degree {}: {w}", d.degree);
                }
            }
            let failed = run.failed_starts();
            if failed > 0 {
                eprintln!("error: {failed} starts did not converge");
                return Ok(2);
            }
            Ok(0)
        }
        Command::Verify { config, run } => {
            let cfg = load_config(&config)?;
            let run = RunRecord::load(&run)?;
            let (_, dir) = verify(&cfg, &run)?;
            println!("{}", dir.join("asymptotics.csv").display());
            println!("{}", dir.join("poles.csv").display());
            Ok(0)
        }
        Command::Criterion { config, run, nu, self_check } => {
            let cfg = load_config(&config)?;
            let run = RunRecord::load(&run)?;
            let nu = nu
                .map(|p| {
                    let text =
                        std::fs::read_to_string(&p).map_err(|e| Error::Invalid(format!("nu {}: {e}", p.display())))?;
                    serde_json::from_str::<SignedMeasureSamples>(&text)
                        .map_err(|e| Error::Invalid(format!("nu {}: {e}", p.display())))
                })
                .transpose()?;
            let (rows, path) = criterion(&cfg, &run, nu.as_ref(), self_check)?;
            for row in &rows {
                if let CriterionRow::Skipped { n, reason } = row {
                    eprintln!("warning: degree {n} skipped: {reason}");
                }
            }
            println!("{}", path.display());
            Ok(0)
        }
        Command::Report { run, out } => {
            let run = RunRecord::load(&run)?;
            for p in report(&run, &out)? {
                println!("{}", p.display());
            }
            Ok(0)
        }
    }
}
