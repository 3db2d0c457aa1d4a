//! Command-line front end for the interferometry workbench: parameter
//! sweeps, figure-data presets, catalog reproduction, and oracle runs.

mod config;
mod sweep;
mod tables;
mod verify;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use config::SweepConfig;

#[derive(Parser)]
#[command(name = "su11", version, about = "Gaussian interferometry workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep from a key=value config file; trailing
    /// key=value arguments override the file (last one wins).
    Sweep {
        config: PathBuf,
        overrides: Vec<String>,
    },
    /// Vacuum-input sensitivity vs pump strength (CSV).
    Fig2a {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimally coupled sensitivity vs pump strength at r = 2 (CSV).
    Fig2b {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimally coupled sensitivity vs squeezing at g = 2 (CSV).
    Fig2c {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce every bound/sensitivity table cell numerically.
    Tables {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Gaussian-vs-Fock oracle checks; exits nonzero on failure.
    Verify {
        #[arg(long, value_enum, default_value_t = GridChoice::Default)]
        grid: GridChoice,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridChoice {
    Default,
    Extended,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep { config, overrides } => {
            let cfg = SweepConfig::from_file(&config)?.with_overrides(&overrides)?;
            sweep::run_sweep(&cfg)?;
        }
        Command::Fig2a { out } => sweep::run_sweep(&sweep::fig2a_config(out))?,
        Command::Fig2b { out } => sweep::run_sweep(&sweep::fig2b_config(out))?,
        Command::Fig2c { out } => sweep::run_sweep(&sweep::fig2c_config(out))?,
        Command::Tables { out } => tables::run(out)?,
        Command::Verify { grid } => {
            let grid = match grid {
                GridChoice::Default => verify::Grid::Default,
                GridChoice::Extended => verify::Grid::Extended,
            };
            let outcome = verify::run(grid)?;
            print!("{}", outcome.report);
            if !outcome.passed {
                std::process::exit(1);
            }
        }
    }
    Ok(())
}
