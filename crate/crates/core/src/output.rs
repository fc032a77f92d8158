//! Plain-text outputs: CSV snapshots, time series, dispersion curves.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::pattern::{peak_positions, spatial_variance, PatternReport};
use crate::solver::{Domain1D, FieldState};
use crate::stability::DispersionCurve;

/// `snap_t<minutes>.csv`
pub fn snapshot_file_name(time: f64) -> String {
    format!("snap_t{time}.csv")
}

pub fn snapshot_csv(state: &FieldState, dom: &Domain1D) -> String {
    let mut s = String::with_capacity(state.len() * 64);
    s.push_str("x,beta,gamma\n");
    for (i, (b, g)) in state.beta.iter().zip(&state.gamma).enumerate() {
        let _ = writeln!(s, "{:e},{b:e},{g:e}", dom.x(i));
    }
    s
}

pub fn write_snapshot(dir: &Path, state: &FieldState, dom: &Domain1D) -> Result<PathBuf> {
    let path = dir.join(snapshot_file_name(state.time));
    fs::write(&path, snapshot_csv(state, dom))?;
    Ok(path)
}

/// One line of `series.csv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub t: f64,
    pub beta_variance: f64,
    pub gamma_variance: f64,
    pub beta_max: f64,
    pub peak_count: usize,
}

impl SeriesRow {
    pub fn from_state(state: &FieldState, dom: &Domain1D, rel_threshold: f64) -> Result<Self> {
        Ok(Self {
            t: state.time,
            beta_variance: spatial_variance(&state.beta),
            gamma_variance: spatial_variance(&state.gamma),
            beta_max: state.beta.iter().copied().fold(0.0, f64::max),
            peak_count: peak_positions(&state.beta, dom.dx(), rel_threshold)?.len(),
        })
    }
}

/// Time series with the final pattern report appended as `# key = value` lines.
pub fn series_csv(rows: &[SeriesRow], report: Option<&PatternReport>) -> String {
    let mut s = String::from("t,beta_variance,gamma_variance,beta_max,peak_count\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{:e},{:e},{:e},{}",
            r.t, r.beta_variance, r.gamma_variance, r.beta_max, r.peak_count
        );
    }
    if let Some(report) = report {
        s.push_str(&report.to_comment_block());
    }
    s
}

pub fn dispersion_csv(curve: &DispersionCurve) -> String {
    let mut s = String::from("xi2,growth_rate\n");
    for (x, g) in curve.xi2_samples.iter().zip(&curve.growth_rates) {
        let _ = writeln!(s, "{x:e},{g:e}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_names() {
        assert_eq!(snapshot_file_name(20160.0), "snap_t20160.csv");
        assert_eq!(snapshot_file_name(0.0), "snap_t0.csv");
        assert_eq!(snapshot_file_name(2.5), "snap_t2.5.csv");
    }

    #[test]
    fn snapshot_layout() {
        let dom = Domain1D::new(1.5, 16).unwrap();
        let s = FieldState::homogeneous(16, 2.0, 0.5);
        let csv = snapshot_csv(&s, &dom);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,beta,gamma"));
        assert_eq!(lines.next(), Some("0e0,2e0,5e-1"));
        assert_eq!(csv.lines().count(), 17);
        assert_eq!(csv.lines().last(), Some("1.5e0,2e0,5e-1"));
    }

    #[test]
    fn series_layout() {
        let rows = [SeriesRow {
            t: 60.0,
            beta_variance: 1.0,
            gamma_variance: 0.0,
            beta_max: 3.0,
            peak_count: 2,
        }];
        assert_eq!(
            series_csv(&rows, None),
            "t,beta_variance,gamma_variance,beta_max,peak_count\n60,1e0,0e0,3e0,2\n"
        );
    }
}
