//! Command-line experiment runner. Exit codes: 0 on success, 2 on
//! configuration errors, 3 when a check mode finds a violated invariant.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use radiohit::families::{verify_hit_fraction, verify_hit_fraction_sampled, SetFamily};
use radiohit::harness::{
    rows_from_csv, rows_to_csv, run_consistency_check, run_experiment, summarize, ExperimentConfig,
};
use radiohit::Error;

const EXIT_CONFIG: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "radiohit",
    version,
    about = "Radio network wake-up/broadcast experiments and hitting-game reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write the result CSV.
    Run {
        /// JSON experiment configuration.
        config: PathBuf,
        /// Override the config's output path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Certify the hit-fraction properties of a set family file.
    VerifyFamily {
        /// JSON family file: {"l": int, "sets": [[...], ...]}.
        family: PathBuf,
        /// Fail (exit 3) when the max hit fraction exceeds this threshold.
        #[arg(long)]
        max_fraction: Option<f64>,
        /// Sample count for universes beyond the exhaustive limit.
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        /// Seed for sampled verification.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay a player spec against sampled targets and verify the
    /// simulation tracks each target execution.
    CheckConsistency {
        /// JSON experiment configuration (player, points, referee, trials).
        config: PathBuf,
    },
    /// Aggregate a result CSV into per-point summary statistics (JSON).
    Summarize {
        /// CSV produced by `run`.
        results: PathBuf,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Run { config, output } => {
            let config_data = ExperimentConfig::from_file(&config)?;
            let rows = run_experiment(&config_data)?;
            let csv = rows_to_csv(&rows);
            let destination = output
                .or_else(|| config_data.output.as_ref().map(PathBuf::from))
                .ok_or_else(|| Error::Config("no output path in config or --output flag".into()))?;
            fs::write(&destination, csv)?;
            let summary = summarize(&rows)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            eprintln!("wrote {} rows to {}", rows.len(), destination.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyFamily {
            family,
            max_fraction,
            samples,
            seed,
        } => {
            let family = SetFamily::from_json(&fs::read_to_string(&family)?)?;
            let certificate = match verify_hit_fraction(&family) {
                Ok(cert) => cert,
                Err(Error::UniverseTooLarge(..)) => {
                    eprintln!("universe too large for exhaustive verification; sampling");
                    verify_hit_fraction_sampled(&family, samples, seed)?
                }
                Err(other) => return Err(other),
            };
            println!("{}", serde_json::to_string_pretty(&certificate)?);
            if let (Some(limit), Some(fraction)) = (max_fraction, certificate.max_hit_fraction()) {
                if fraction > limit {
                    eprintln!("max hit fraction {fraction} exceeds {limit}");
                    return Ok(ExitCode::from(EXIT_VIOLATION));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckConsistency { config } => {
            let config_data = ExperimentConfig::from_file(&config)?;
            let outcomes = run_consistency_check(&config_data)?;
            let violations: Vec<_> = outcomes.iter().filter(|o| o.is_violation()).collect();
            println!("{}", serde_json::to_string_pretty(&outcomes)?);
            if violations.is_empty() {
                eprintln!("{} games checked, all consistent", outcomes.len());
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "{} of {} games violated consistency",
                    violations.len(),
                    outcomes.len()
                );
                Ok(ExitCode::from(EXIT_VIOLATION))
            }
        }
        Command::Summarize { results } => {
            let rows = rows_from_csv(&fs::read_to_string(&results)?)?;
            let summary = summarize(&rows)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
