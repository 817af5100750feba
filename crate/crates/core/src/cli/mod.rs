//! Command-line entry point.
//!
//! Exit codes: 0 success, 2 when a dispatch cannot meet the steam demand,
//! 1 on any other error.

mod commands;
pub mod config;
pub mod units;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{Manifest, MANIFEST_FILE};
pub use config::{Run, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "steamflex", version, about = "Dispatch and sizing of electrode boiler, steam accumulator and battery systems")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (default: `out` from the config, else ./out).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the FCR acceptance mask and differential evolution.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores for sizing and sweeps, one for dispatch).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Region defaults: NO-2024 or DE-2024.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Optimal dispatch of one configuration.
    Dispatch,
    /// Grid search plus differential evolution over a search space.
    Size,
    /// Cost-factor or inlet-temperature sweep.
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
    },
    /// Load and check the scenario inputs.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Sensitivity,
    Preheat,
}

/// Outcome of a command, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Infeasible,
}

pub fn run_cli(cli: &Cli) -> anyhow::Result<Status> {
    let default_jobs = match cli.command {
        Command::Dispatch | Command::Validate => 1,
        _ => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let jobs = cli.jobs.unwrap_or(default_jobs).max(1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    pool.install(|| commands::execute(cli))
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run_cli(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Infeasible) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
