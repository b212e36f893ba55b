use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use eswm_cli::config::{ExperimentKind, PartialConfig};
use eswm_cli::experiment::run_experiment;

/// Batch experiment driver for the double-auction market simulator.
///
/// With no config file, runs the default single-auction comparison at the
/// standard simulation setting. Flags override config-file values.
#[derive(Parser, Debug)]
#[command(name = "eswm", version, about)]
struct Cli {
    /// Path to a TOML experiment configuration.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Experiment family: single_auction, reselection, beta_sweep, or
    /// oracle_compare.
    #[arg(long)]
    experiment: Option<String>,

    /// Master seed; every output is a pure function of it.
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory for CSV artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let mut partial = match &cli.config {
        None => PartialConfig::default(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read config {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match PartialConfig::from_toml(&text) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    };

    if let Some(name) = &cli.experiment {
        match name.parse::<ExperimentKind>() {
            Ok(kind) => partial.experiment = Some(kind),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if let Some(seed) = cli.seed {
        partial.master_seed = Some(seed);
    }
    if let Some(out) = cli.out {
        partial.output_dir = Some(out);
    }

    let cfg = match partial.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    match run_experiment(&cfg) {
        Ok(output) => {
            print!("{}", output.summary);
            for path in &output.csv_files {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
