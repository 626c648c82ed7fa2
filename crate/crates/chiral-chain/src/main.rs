// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Thin CLI over the library drivers.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chiral_chain::io::{
    parse_config, run_disorder, run_experiment, run_simulate, run_spectrum, run_sweep, Config,
    OutputOptions, Overrides, Preset,
};

/// Environment variable selecting the worker count for ensembles
/// (default: available parallelism).
const THREADS_ENV: &str = "CHIRAL_CHAIN_THREADS";

#[derive(Parser)]
#[command(
    name = "chiral-chain",
    version,
    about = "Single-photon collective decay in a chirally coupled atomic chain",
    after_help = "Worker count for disorder ensembles comes from CHIRAL_CHAIN_THREADS \
                  (default: available parallelism)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON config file (see README for the schema)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Override the master seed
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the time step (units of 1/gamma)
    #[arg(long, global = true)]
    dt: Option<f64>,

    /// Override the time horizon (units of 1/gamma)
    #[arg(long, global = true)]
    t_end: Option<f64>,

    /// Also write SVG line plots next to each CSV
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one configuration: trajectory, decay fit, plateaus
    Simulate,
    /// Decay-constant tables over N and Ni
    Sweep {
        /// Largest chain length
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Initially excited block sizes, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3])]
        ni: Vec<usize>,
    },
    /// Disorder ensemble of the configured chain
    Disorder,
    /// Eigenvalues and defectiveness report
    Spectrum,
    /// Re-run a named preset: fig2..fig6, or custom (with --config)
    Reproduce { preset: Preset },
}

fn load_config(cli: &Cli) -> chiral_chain::Result<Config> {
    let path = cli.config.as_ref().ok_or_else(|| chiral_chain::Error::Config {
        field: "--config".into(),
        reason: "this subcommand needs a config file".into(),
    })?;
    let mut cfg = parse_config(path)?;
    overrides(cli).apply(&mut cfg);
    Ok(cfg)
}

fn overrides(cli: &Cli) -> Overrides {
    Overrides {
        seed: cli.seed,
        dt: cli.dt,
        t_end: cli.t_end,
    }
}

fn run(cli: &Cli) -> chiral_chain::Result<()> {
    let opts = OutputOptions {
        out_dir: cli.out.clone(),
        svg: cli.svg,
    };
    match &cli.command {
        Command::Simulate => {
            run_simulate(&load_config(cli)?, &opts)?;
        }
        Command::Sweep { n_max, ni } => {
            let cfg = match &cli.config {
                Some(_) => load_config(cli)?,
                // Default sweep base: the cascaded chain at xi = pi.
                None => {
                    let mut cfg =
                        chiral_chain::io::parse_config_str(r#"{"N": 12, "t_end": 300}"#)?;
                    overrides(cli).apply(&mut cfg);
                    cfg
                }
            };
            run_sweep(&cfg, *n_max, ni, &opts)?;
        }
        Command::Disorder => {
            run_disorder(&load_config(cli)?, &opts)?;
        }
        Command::Spectrum => {
            run_spectrum(&load_config(cli)?, &opts)?;
        }
        Command::Reproduce { preset } => {
            let custom = match preset {
                Preset::Custom => Some(load_config(cli)?),
                _ => None,
            };
            run_experiment(*preset, custom.as_ref(), &overrides(cli), &opts)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                // Ignore the error if a pool is already installed.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: config field `{THREADS_ENV}`: expected a positive integer, got `{value}`");
                return ExitCode::from(2);
            }
        }
    }

    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
