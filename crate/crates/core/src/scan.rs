//! Classification of `(r_c, a)` pairs by the Turing condition.
//!
//! Each cell recouples `f_b = 0.1·r_c`, recalibrates `f_e` so that the
//! equilibrium sits at `θ = 0.3`, and then evaluates the linear verdicts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::model::{calibrate_fe, ModelParams, DEFAULT_FB_OVER_RC, DEFAULT_THETA};
use crate::stability::analyze;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Turing,
    StableOnly,
    OdeUnstable,
    Infeasible,
}

impl Verdict {
    /// Integer code used in `scan.csv`.
    pub fn code(self) -> i8 {
        match self {
            Verdict::Turing => 2,
            Verdict::StableOnly => 1,
            Verdict::OdeUnstable => 0,
            Verdict::Infeasible => -1,
        }
    }

    pub fn from_code(code: i8) -> Option<Self> {
        match code {
            2 => Some(Verdict::Turing),
            1 => Some(Verdict::StableOnly),
            0 => Some(Verdict::OdeUnstable),
            -1 => Some(Verdict::Infeasible),
            _ => None,
        }
    }
}

/// Calibration recipe applied to every cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecipe {
    pub theta: f64,
    pub fb_over_rc: f64,
}

impl Default for ScanRecipe {
    fn default() -> Self {
        Self {
            theta: DEFAULT_THETA,
            fb_over_rc: DEFAULT_FB_OVER_RC,
        }
    }
}

/// Verdict at one `(r_c, a)` point; `base` supplies every other coefficient.
pub fn classify_point(base: &ModelParams, recipe: &ScanRecipe, r_c: f64, a: f64) -> Verdict {
    let mut raw = base.without_fe();
    raw.r_c = r_c;
    raw.a = a;
    raw.f_b = recipe.fb_over_rc * r_c;
    let Ok(f_e) = calibrate_fe(&raw, recipe.theta) else {
        return Verdict::Infeasible;
    };
    match analyze(&raw.with_fe(f_e)) {
        Ok(a) if a.verdict.turing => Verdict::Turing,
        Ok(a) if !a.verdict.ode_stable => Verdict::OdeUnstable,
        Ok(_) => Verdict::StableOnly,
        Err(_) => Verdict::Infeasible,
    }
}

/// Rows follow `r_c_axis`, columns follow `a_axis`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub r_c_axis: Vec<f64>,
    pub a_axis: Vec<f64>,
    /// Row-major, `r_c_axis.len() × a_axis.len()`.
    pub verdicts: Vec<Verdict>,
}

impl ScanGrid {
    pub fn get(&self, i_rc: usize, j_a: usize) -> Verdict {
        self.verdicts[i_rc * self.a_axis.len() + j_a]
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.verdicts.iter().filter(|&&x| x == v).count()
    }

    /// Matrix with a header row of `a` values and a leading column of `r_c` values.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r_c\\a");
        for a in &self.a_axis {
            out.push_str(&format!(",{a:e}"));
        }
        out.push('\n');
        for (i, rc) in self.r_c_axis.iter().enumerate() {
            out.push_str(&format!("{rc:e}"));
            for j in 0..self.a_axis.len() {
                out.push_str(&format!(",{}", self.get(i, j).code()));
            }
            out.push('\n');
        }
        out
    }
}

/// Inclusive, evenly spaced axis.
pub fn linear_axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

fn check_range(name: &'static str, (lo, hi): (f64, f64)) -> Result<()> {
    require_positive(name, lo)?;
    require_positive(name, hi)?;
    if hi <= lo {
        return Err(Error::Domain {
            name,
            value: hi,
            reason: "range upper bound must exceed the lower bound",
        });
    }
    Ok(())
}

/// Classifies a `resolution.0 × resolution.1` grid over `r_c_range × a_range`.
pub fn scan_region(
    base: &ModelParams,
    r_c_range: (f64, f64),
    a_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<ScanGrid> {
    scan_region_with(base, &ScanRecipe::default(), r_c_range, a_range, resolution)
}

pub fn scan_region_with(
    base: &ModelParams,
    recipe: &ScanRecipe,
    r_c_range: (f64, f64),
    a_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<ScanGrid> {
    check_range("r_c_range", r_c_range)?;
    check_range("a_range", a_range)?;
    if resolution.0 < 2 || resolution.1 < 2 {
        return Err(Error::Domain {
            name: "resolution",
            value: resolution.0.min(resolution.1) as f64,
            reason: "need at least 2×2 cells",
        });
    }
    let r_c_axis = linear_axis(r_c_range.0, r_c_range.1, resolution.0);
    let a_axis = linear_axis(a_range.0, a_range.1, resolution.1);
    let n_a = a_axis.len();
    let cell = |idx: usize| classify_point(base, recipe, r_c_axis[idx / n_a], a_axis[idx % n_a]);
    let cells = r_c_axis.len() * n_a;

    #[cfg(feature = "parallel")]
    let verdicts = (0..cells).into_par_iter().map(cell).collect();
    #[cfg(not(feature = "parallel"))]
    let verdicts = (0..cells).map(cell).collect();

    Ok(ScanGrid {
        r_c_axis,
        a_axis,
        verdicts,
    })
}

/// Extent of the Turing set along `a` at fixed `r_c`, from a dense sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TuringWindow {
    pub a_min: f64,
    pub a_max: f64,
}

impl TuringWindow {
    /// Width over midpoint.
    pub fn relative_width(&self) -> f64 {
        (self.a_max - self.a_min) / (0.5 * (self.a_max + self.a_min))
    }
}

pub fn turing_window(
    base: &ModelParams,
    r_c: f64,
    a_range: (f64, f64),
    samples: usize,
) -> Option<TuringWindow> {
    let recipe = ScanRecipe::default();
    let hits: Vec<f64> = linear_axis(a_range.0, a_range.1, samples.max(2))
        .into_iter()
        .filter(|&a| classify_point(base, &recipe, r_c, a) == Verdict::Turing)
        .collect();
    Some(TuringWindow {
        a_min: *hits.first()?,
        a_max: *hits.last()?,
    })
}
