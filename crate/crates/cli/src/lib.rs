//! Reproduction suite, family sweeps, oracle checks and conjecture scan
//! for two-qubit teleportation through four-qubit resources.
//!
//! Exit statuses: 0 when every check passes, 1 when a numerical check
//! fails, 2 on usage or I/O errors.

pub mod commands;
pub mod config;
pub mod report;

use config::{Cli, Command, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] qteleport_core::Error),
}

impl CliError {
    fn io(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }

    fn csv(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs a parsed command line and returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(0) => EXIT_OK,
        Ok(failed) => {
            eprintln!("{failed} check(s) failed");
            EXIT_NUMERICAL
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Number of failed checks, or the error that stopped the run.
pub fn execute(cli: &Cli) -> Result<usize, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let out = match cli.command {
        Command::Reproduce => commands::reproduce::run(&cfg)?,
        Command::Scan { family, eps_points } => commands::scan::run(&cfg, family, eps_points)?,
        Command::OracleCheck => commands::oracle::run(&cfg)?,
        Command::Conjecture { sampler, restarts } => commands::conjecture::run(&cfg, sampler, restarts)?,
    };
    report::write(&cfg, &out)?;
    Ok(out.checks.failed())
}
