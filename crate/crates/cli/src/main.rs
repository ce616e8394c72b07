//! Command-line front end for the mixed-traffic coded caching analyses.

mod commands;
mod config;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Report, RegionArgs, SnrArgs, VerifyArgs};
use config::{Flags, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

#[derive(Debug, Parser)]
#[command(name = "mixcache", version, about = "Delivery time and GDoF trade-offs for cache-aided degraded broadcast channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Achievable, memory-sharing and converse delivery times over a cache-size grid
    Gndt(Flags),
    /// Bottleneck user, hole inequalities and per-vertex delivery-time checks
    Holes(Flags),
    /// Dump a GDoF region with exact rational rows
    Region(RegionArgs),
    /// End-to-end caching and region-projection checks, one JSON line per case
    Verify(VerifyArgs),
    /// Finite-power rate regions and gap certificates
    FiniteSnr(SnrArgs),
    /// Joint two-set delivery against memory sharing over a cache-size grid
    SweepMemory(Flags),
}

fn run(cli: &Cli) -> Result<(Report, Option<std::path::PathBuf>), CliError> {
    Ok(match &cli.command {
        Command::Gndt(flags) => {
            let cfg = RunConfig::resolve(flags)?;
            (commands::gndt(&cfg)?, cfg.out)
        }
        Command::SweepMemory(flags) => {
            let cfg = RunConfig::resolve(flags)?;
            (commands::sweep_memory(&cfg)?, cfg.out)
        }
        Command::Holes(flags) => {
            let cfg = RunConfig::resolve(flags)?;
            (commands::holes(&cfg)?, cfg.out)
        }
        Command::Region(args) => (commands::region(args)?, RunConfig::resolve(&args.flags)?.out),
        Command::Verify(args) => (commands::verify(args)?, RunConfig::resolve(&args.flags)?.out),
        Command::FiniteSnr(args) => (commands::finite_snr(args)?, RunConfig::resolve(&args.flags)?.out),
    })
}

fn emit(body: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(report, out)| {
        emit(&report.body, out.as_deref())?;
        Ok(report.failure)
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(reason)) => {
            eprintln!("verification failed: {reason}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) | Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
