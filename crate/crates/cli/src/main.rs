//! `magnon` — reproducible XXZ-chain experiments from the command line.
//!
//! Subcommands: `spectrum` (exact diagonalization), `vqe` (variational
//! run against exact or shot-sampled backends), `bethe solve`/`verify`
//! (Bethe-equation machinery), `sweep` (energy landscape CSV), and
//! `circuit emit` (trial-state gate lists). Every JSON output embeds a
//! run manifest with the resolved flags for provenance.

mod commands;
mod manifest;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit codes: 0 success, 1 domain error, 2 usage error.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Usage(String),
}

impl From<magnon_core::Error> for CliError {
    fn from(e: magnon_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "magnon",
    version,
    about = "XXZ spin-chain VQE and Bethe-ansatz laboratory",
    after_help = "Relative output paths are resolved against $MAGNON_OUT_DIR when it is set."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact spectrum of the XXZ chain (dense diagonalization, N <= 12).
    Spectrum(SpectrumArgs),
    /// Variational minimization of the trial-state energy.
    Vqe(VqeArgs),
    /// Bethe-equation solving and verification.
    Bethe {
        #[command(subcommand)]
        command: BetheCommand,
    },
    /// Energy landscape sweep over the variational parameter, as CSV.
    Sweep(SweepArgs),
    /// Trial-state circuit emission.
    Circuit {
        #[command(subcommand)]
        command: CircuitCommand,
    },
}

#[derive(Args)]
struct SpectrumArgs {
    /// Number of chain sites (2..=12).
    #[arg(long)]
    sites: usize,
    /// Anisotropy parameter (> 0).
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Write the spectrum as JSON to this path.
    #[arg(long)]
    json: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VqeArgs {
    /// Number of chain sites (2 or 4).
    #[arg(long)]
    sites: usize,
    /// Anisotropy parameter (> 0).
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Which excited state to drive toward (`second` needs --sites 2).
    #[arg(long, default_value = "first", value_parser = ["first", "second"])]
    target: String,
    /// Energy evaluation backend.
    #[arg(long, default_value = "exact", value_parser = ["exact", "shots"])]
    backend: String,
    /// Shots per measurement setting (defaults: 1024 for 2 sites, 8192 for 4).
    #[arg(long)]
    shots: Option<u64>,
    /// Base seed for the sampled backend.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Objective evaluation budget.
    #[arg(long, default_value_t = 60)]
    budget: usize,
    /// Write the result as JSON to this path.
    #[arg(long)]
    json: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum BetheCommand {
    /// Solve the Bethe equations for the extremal real-root sector.
    Solve(BetheSolveArgs),
    /// Verify given momenta against the Bethe equations.
    Verify(BetheVerifyArgs),
}

#[derive(Args)]
struct BetheSolveArgs {
    /// Number of chain sites.
    #[arg(long)]
    sites: usize,
    /// Number of magnons (1..=N/2).
    #[arg(long)]
    magnons: usize,
    /// Anisotropy parameter (> 0).
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Write the root set as JSON to this path.
    #[arg(long)]
    json: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct BetheVerifyArgs {
    /// Number of chain sites.
    #[arg(long)]
    sites: usize,
    /// Number of magnons; must match the momentum count when given.
    #[arg(long)]
    magnons: Option<usize>,
    /// Comma-separated list of real momenta.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<f64>,
    /// Anisotropy parameter (> 0).
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Write the verification report as JSON to this path.
    #[arg(long)]
    json: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of chain sites (2 or 4).
    #[arg(long)]
    sites: usize,
    /// Anisotropy parameter (> 0).
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Number of grid points over [-pi, pi] (>= 2).
    #[arg(long, default_value_t = 181)]
    points: usize,
    /// CSV output path.
    #[arg(long)]
    csv: std::path::PathBuf,
}

#[derive(Subcommand)]
enum CircuitCommand {
    /// Emit the trial-state circuit as line-based gate text.
    Emit(CircuitEmitArgs),
}

#[derive(Args)]
struct CircuitEmitArgs {
    /// Number of chain sites (2 or 4).
    #[arg(long)]
    sites: usize,
    /// Variational parameter in radians.
    #[arg(long)]
    p: f64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Spectrum(args) => commands::spectrum(args),
        Command::Vqe(args) => commands::vqe(args),
        Command::Bethe { command } => match command {
            BetheCommand::Solve(args) => commands::bethe_solve(args),
            BetheCommand::Verify(args) => commands::bethe_verify(args),
        },
        Command::Sweep(args) => commands::sweep(args),
        Command::Circuit { command } => match command {
            CircuitCommand::Emit(args) => commands::circuit_emit(args),
        },
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
