use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use patchy::cli::{exit_code, run, Command};
use patchy::config::{parse_config, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sub {
    Steady,
    Stability,
    Dispersion,
    Simulate,
    Scan,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Steady => Command::Steady,
            Sub::Stability => Command::Stability,
            Sub::Dispersion => Command::Dispersion,
            Sub::Simulate => Command::Simulate,
            Sub::Scan => Command::Scan,
        }
    }
}

/// Bacteria–phagocyte Turing model: equilibria, stability, simulation, scans.
#[derive(Debug, Parser)]
#[command(name = "patchy", version)]
struct Cli {
    #[arg(value_enum)]
    command: Sub,
    /// `key = value` configuration file; reference parameters when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `out_dir` in the config; default `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for perturbed initial conditions (overrides `seed` in the config).
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let cfg = match &cli.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(patchy::Error::from)
            .and_then(|text| parse_config(&text)),
        None => Ok(RunConfig::default()),
    };
    let mut cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("patchy: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out_dir = Some(out.clone());
    }
    let out = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"));

    let mut stdout = std::io::stdout().lock();
    match run(cli.command.into(), &cfg, &out, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("patchy: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
