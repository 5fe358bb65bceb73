//! Command-line workflow: ingest a daily price CSV, fit the NIG
//! autoregression, simulate, run diagnostics and replication studies.

pub mod commands;
pub mod config;
pub mod error;
pub mod fixture;
pub mod ingest;

use clap::{Parser, Subcommand};

pub use commands::{cmd_diagnose, cmd_fit, cmd_replicate, cmd_simulate, execute, EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_OK};
pub use config::RunConfig;
pub use error::{CliError, IngestError};
pub use ingest::{ingest_csv, Ingested, IngestWarnings};

#[derive(Debug, Parser)]
#[command(name = "nigar", version, about = "Fit and simulate AR(1) models with NIG innovations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the model to one column of a CSV file.
    Fit(RunConfig),
    /// Simulate a path from given parameters.
    Simulate(RunConfig),
    /// Correlograms, residual histogram, QQ data and a two-sample KS check.
    Diagnose(RunConfig),
    /// Repeated simulate-and-fit study with box-plot summaries.
    Replicate(RunConfig),
}

impl Command {
    pub fn split(&self) -> (&'static str, &RunConfig) {
        match self {
            Command::Fit(c) => ("fit", c),
            Command::Simulate(c) => ("simulate", c),
            Command::Diagnose(c) => ("diagnose", c),
            Command::Replicate(c) => ("replicate", c),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code: 0 success, 2 EM stopped at the iteration cap, 1 bad
/// usage or input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let (name, cfg) = cli.command.split();
    match execute(name, cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
