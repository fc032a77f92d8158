//! Subcommand drivers shared by the `patchy` binary and the tests.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::config::{FeSource, RunConfig};
use crate::error::{Error, Result};
use crate::output::{dispersion_csv, series_csv, write_snapshot, SeriesRow};
use crate::pattern::PatternReport;
use crate::scan::scan_region;
use crate::solver::simulate_with;
use crate::stability::{analyze, band_roots, default_dispersion, taylor_band};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Steady,
    Stability,
    Dispersion,
    Simulate,
    Scan,
}

impl Command {
    pub const ALL: [Command; 5] = [
        Command::Steady,
        Command::Stability,
        Command::Dispersion,
        Command::Simulate,
        Command::Scan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Steady => "steady",
            Command::Stability => "stability",
            Command::Dispersion => "dispersion",
            Command::Simulate => "simulate",
            Command::Scan => "scan",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config {
                key: "subcommand".into(),
                message: format!("unknown subcommand `{s}`"),
            })
    }
}

/// Process exit status for an error: 1 for input problems (including a time
/// step above the stability bound), 2 for runtime invariant violations and
/// internal inconsistencies.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvariantViolation { .. } | Error::Internal(_) => 2,
        _ => 1,
    }
}

/// Runs one subcommand, writing files into `out` and a human-readable
/// summary to `stdout`. Every run leaves a `manifest` behind.
pub fn run(cmd: Command, cfg: &RunConfig, out: &Path, stdout: &mut dyn Write) -> Result<()> {
    fs::create_dir_all(out)?;
    fs::write(out.join("manifest"), cfg.to_manifest())?;
    let p = &cfg.params;
    match cmd {
        Command::Steady => {
            let a = analyze(p)?;
            let eq = a.equilibrium;
            writeln!(stdout, "beta_bar = {:.9e}", eq.beta_bar)?;
            writeln!(stdout, "gamma_bar = {:.9e}", eq.gamma_bar)?;
            writeln!(stdout, "theta = {}", eq.theta)?;
            if let FeSource::Calibrated { theta_target } = cfg.fe_source {
                writeln!(
                    stdout,
                    "f_e = {:e} (calibrated at theta_target = {theta_target})",
                    p.f_e
                )?;
            }
        }
        Command::Stability => {
            let a = analyze(p)?;
            let v = a.verdict;
            writeln!(stdout, "trace = {:e}", v.trace)?;
            writeln!(stdout, "det = {:e}", v.det)?;
            writeln!(stdout, "ode_stable = {}", v.ode_stable)?;
            writeln!(
                stdout,
                "turing_condition_value = {:e}",
                v.turing_condition_value
            )?;
            writeln!(stdout, "turing = {}", v.turing)?;
        }
        Command::Dispersion => {
            let a = analyze(p)?;
            let curve = default_dispersion(p, &a.jacobian, cfg.dispersion_samples);
            fs::write(out.join("dispersion.csv"), dispersion_csv(&curve))?;
            match curve.band {
                Some((lm, lp)) => {
                    let (tm, tp) = taylor_band(p, &a.jacobian);
                    writeln!(stdout, "lambda_minus = {lm:e}")?;
                    writeln!(stdout, "lambda_plus = {lp:e}")?;
                    writeln!(stdout, "taylor_lambda_minus = {tm:e}")?;
                    writeln!(stdout, "taylor_lambda_plus = {tp:e}")?;
                }
                None => writeln!(stdout, "unstable band: empty")?,
            }
        }
        Command::Simulate => {
            let a = analyze(p)?;
            let band = band_roots(p, &a.jacobian);
            let dom = cfg.domain;
            let sim = cfg.sim_config();
            let mut rows = Vec::new();
            let mut last = None;
            let mut failure = None;
            simulate_with(p, &dom, &sim, |state| {
                if failure.is_some() {
                    return;
                }
                let res = write_snapshot(out, state, &dom)
                    .and_then(|_| SeriesRow::from_state(state, &dom, cfg.peak_threshold));
                match res {
                    Ok(row) => rows.push(row),
                    Err(e) => failure = Some(e),
                }
                last = Some(state.clone());
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            let last = last.expect("simulation emits at least one snapshot");
            let report = PatternReport::analyze(
                &last,
                &dom,
                band,
                a.equilibrium.beta_bar,
                cfg.peak_threshold,
            )?;
            fs::write(out.join("series.csv"), series_csv(&rows, Some(&report)))?;
            fs::write(out.join("report.json"), report.to_json() + "\n")?;
            writeln!(stdout, "snapshots = {}", rows.len())?;
            writeln!(stdout, "t_final = {}", last.time)?;
            write!(stdout, "{}", report.to_comment_block().replace("# ", ""))?;
        }
        Command::Scan => {
            let s = cfg.scan;
            let grid = scan_region(p, s.r_c_range, s.a_range, s.resolution)?;
            fs::write(out.join("scan.csv"), grid.to_csv())?;
            use crate::scan::Verdict::*;
            writeln!(stdout, "cells = {}", grid.verdicts.len())?;
            for v in [Turing, StableOnly, OdeUnstable, Infeasible] {
                writeln!(stdout, "{v:?} = {}", grid.count(v))?;
            }
        }
    }
    Ok(())
}
