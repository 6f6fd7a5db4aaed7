//! Command-line front end for the piston work-distribution pipeline.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use pistonwork::cli::{
    cmd_amplitudes, cmd_decompose, cmd_noise, cmd_sample, cmd_sweep, cmd_workdist, linspace,
    parse_grid, RunConfig, SweepVariable, DEFAULT_LAMBDA_GRID, DEFAULT_V_GRID,
};
use pistonwork::error::Error;

#[derive(Parser)]
#[command(
    name = "pistonwork",
    about = "Work distribution of identical bosons in an expanding piston, via permanents and an interferometer model (units: M = hbar = k_B = 1)"
)]
struct Args {
    /// JSON config file; defaults reproduce the worked three-boson example.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Unitarity-fidelity threshold for truncation.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Number of sampling draws.
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Noise half-width applied to mesh angles.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Number of noise trials.
    #[arg(long, global = true)]
    trials: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the truncated transition-amplitude matrix.
    Amplitudes,
    /// Compile a matrix file into an interferometer program.
    Decompose { matrix: PathBuf },
    /// Emit the work distribution as W,prob,cdf.
    Workdist,
    /// Truncation dimension across a parameter grid.
    Sweep {
        /// "v" or "lambda_tau".
        #[arg(long)]
        variable: String,
        /// start:stop:count or comma-separated values.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Simulate a sampling run through a program file.
    Sample { program: PathBuf },
    /// Cumulative-distribution spread under mesh-angle noise.
    Noise,
}

fn run(args: Args) -> Result<(), Error> {
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = args.out {
        config.output_dir = out;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(threshold) = args.threshold {
        config.fidelity_threshold = threshold;
    }
    if let Some(samples) = args.samples {
        config.n_samples = samples;
    }
    if let Some(epsilon) = args.epsilon {
        config.epsilon = epsilon;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }

    match args.command {
        Command::Amplitudes => cmd_amplitudes(&config)?,
        Command::Decompose { matrix } => cmd_decompose(&config, &matrix)?,
        Command::Workdist => cmd_workdist(&config)?,
        Command::Sweep { variable, grid } => {
            let variable: SweepVariable = variable.parse()?;
            let grid = match grid {
                Some(text) => parse_grid(&text)?,
                None => {
                    let (start, stop, count) = match variable {
                        SweepVariable::Speed => DEFAULT_V_GRID,
                        SweepVariable::FinalLength => DEFAULT_LAMBDA_GRID,
                    };
                    linspace(start, stop, count)
                }
            };
            cmd_sweep(&config, variable, &grid)?
        }
        Command::Sample { program } => cmd_sample(&config, &program)?,
        Command::Noise => cmd_noise(&config)?,
    };
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
