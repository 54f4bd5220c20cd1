//! Command-line surface: project files, grid files and the four subcommands.

pub mod commands;
pub mod grid_io;
pub mod project;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::thermal::GridMode;
use commands::{CosimOptions, GridOptions, LeakageOptions};

pub use commands::{CliError, EXIT_NOT_CONVERGED, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};
pub use grid_io::{parse_grid, write_grid, GridParseError};
pub use project::{load_project, parse_project, Project, ProjectError, ProjectFile};

#[derive(Debug, Parser)]
#[command(name = "ptherm", version, about = "Leakage, die temperature and electro-thermal estimates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-gate, per-vector OFF current and static power.
    Leakage {
        project: PathBuf,
        /// Evaluation temperature (K); defaults to the reference temperature.
        #[arg(long)]
        temp: Option<f64>,
        /// List every input vector of every gate.
        #[arg(long)]
        all_vectors: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Temperature map of the blocks' dynamic power.
    Thermal {
        project: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-consistent leakage and temperature solve.
    Cosim {
        project: PathBuf,
        /// Include every iteration in the report.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Report path (JSON); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the final temperature map here.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[command(flatten)]
        grid_args: GridArgs,
    },
    /// Compare the closed forms against the brute-force references.
    Verify {
        project: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Rise,
    Absolute,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 101)]
    pub nx: usize,
    #[arg(long, default_value_t = 101)]
    pub ny: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Absolute)]
    pub mode: ModeArg,
}

impl From<&GridArgs> for GridOptions {
    fn from(a: &GridArgs) -> Self {
        GridOptions {
            nx: a.nx,
            ny: a.ny,
            mode: match a.mode {
                ModeArg::Rise => GridMode::Rise,
                ModeArg::Absolute => GridMode::Absolute,
            },
        }
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let res = match &cli.command {
        Command::Leakage { project, temp, all_vectors, out } => {
            let opts = LeakageOptions { temp: *temp, all_vectors: *all_vectors, out: out.clone() };
            commands::cmd_leakage(project, &opts, stdout, stderr)
        }
        Command::Thermal { project, grid, out } => commands::cmd_thermal(project, &grid.into(), out.as_deref(), stdout),
        Command::Cosim { project, trace, max_iter, out, grid, grid_args } => {
            let opts = CosimOptions {
                trace: *trace,
                max_iter: *max_iter,
                out: out.clone(),
                grid_out: grid.clone(),
                grid: grid_args.into(),
            };
            commands::cmd_cosim(project, &opts, stdout, stderr)
        }
        Command::Verify { project, out } => commands::cmd_verify(project.as_deref(), out.as_deref(), stdout),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
