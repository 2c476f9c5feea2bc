// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! `lyapite run <config.json>`: seeded, reproducible experiment runs.

// `!(x > 0.0)` style checks reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod error;
mod experiments;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::output::{sha256_hex, RunManifest};

#[derive(Parser)]
#[command(
    name = "lyapite",
    version,
    about = "Lyapunov-controlled imaginary-time evolution experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Overrides `seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        quiet: bool,
        /// Worker threads for batch members and sweep points.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn run(
    config_path: &Path,
    output_dir: Option<PathBuf>,
    seed: Option<u64>,
    quiet: bool,
    jobs: usize,
) -> Result<(), CliError> {
    let started = Instant::now();
    let raw = std::fs::read(config_path).map_err(|e| CliError::io(config_path, e))?;
    let text = std::str::from_utf8(&raw).map_err(|e| CliError::config("", e.to_string()))?;
    let mut cfg = config::parse(text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let out = output_dir
        .or_else(|| cfg.output_dir.clone())
        .ok_or_else(|| {
            CliError::config(
                "output_dir",
                "missing; set it in the config or pass --output-dir",
            )
        })?;
    if jobs == 0 {
        return Err(CliError::config("--jobs", "must be >= 1"));
    }
    let base = config_path.parent().unwrap_or(Path::new("."));
    let plan = config::validate(&cfg, base)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::config("--jobs", e.to_string()))?;
    let artifacts = experiments::run(&plan, &pool)?;

    let manifest = RunManifest {
        experiment: plan.experiment_name().to_string(),
        config_sha256: sha256_hex(&raw),
        seed: plan.seed,
        artifacts: artifacts.names(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    output::write_all(&out, &artifacts, &manifest)?;
    if !quiet {
        eprintln!(
            "{}: wrote {} artifacts to {} in {:.2}s",
            manifest.experiment,
            manifest.artifacts.len() + 1,
            out.display(),
            manifest.wall_clock_seconds
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run {
        config,
        output_dir,
        seed,
        quiet,
        jobs,
    } = cli.command;
    match run(&config, output_dir, seed, quiet, jobs) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lyapite: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
