//! Command-line surface and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "qteleport-lab", version, about = "Two-qubit teleportation through four-qubit resources")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub shared: SharedArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the fixed list of reference checks.
    Reproduce,
    /// Sweep one resource family and tabulate gsf, fidelity and negativity.
    Scan {
        #[arg(long, value_enum)]
        family: Family,
        /// Points of the input-state angle grid on [0, π/2].
        #[arg(long, default_value_t = 7)]
        eps_points: usize,
    },
    /// Cross-check the protocol simulation against the channel formulas.
    OracleCheck,
    /// Search random resources with gsf_max ≤ 1/4 for teleported entanglement.
    Conjecture {
        #[arg(long, value_enum, default_value_t = Sampler::Ginibre)]
        sampler: Sampler,
        /// Restarts of the unitary search behind gsf_max.
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
}

#[derive(Debug, Args)]
pub struct SharedArgs {
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Report path; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Iso,
    Gs,
    Ghz,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    Ginibre,
    #[value(name = "ups_mixture")]
    UpsMixture,
    #[value(name = "smolin_mixture")]
    SmolinMixture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Reproduce,
    Scan,
    OracleCheck,
    Conjecture,
}

/// Everything a command needs, with per-command defaults filled in.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub seed: u64,
    pub samples: usize,
    pub grid_points: usize,
    /// `None` keeps each check's own pinned tolerance.
    pub tolerance: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let (command, samples, grid) = match cli.command {
            Command::Reproduce => (CommandKind::Reproduce, 1, 11),
            Command::Scan { .. } => (CommandKind::Scan, 1, 11),
            Command::OracleCheck => (CommandKind::OracleCheck, 50, 2),
            Command::Conjecture { .. } => (CommandKind::Conjecture, 1000, 9),
        };
        let s = &cli.shared;
        let cfg = RunConfig {
            command,
            seed: s.seed,
            samples: s.samples.unwrap_or(samples),
            grid_points: s.grid.unwrap_or(grid),
            tolerance: s.tol,
            output_path: s.out.clone(),
            format: s.format,
        };
        if cfg.samples < 1 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        if cfg.grid_points < 2 {
            return Err(CliError::Usage("--grid must be at least 2".into()));
        }
        if let Some(t) = cfg.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage("--tol must be a positive number".into()));
            }
        }
        Ok(cfg)
    }

    /// The user's tolerance if given, else `pinned`.
    pub fn tol_or(&self, pinned: f64) -> f64 {
        self.tolerance.unwrap_or(pinned)
    }
}
