//! Linearization at the positive equilibrium: ODE stability, the Turing
//! condition and the spatial dispersion relation.
//!
//! A Fourier mode `exp(λt + iξx)` of the linearized system grows iff
//! `λ² + a₁λ + a₂ = 0` has a root with positive real part, where
//!
//! ```text
//! a₁ = −tr(M) + (d_b + d_c) ξ²
//! a₂ = det(M) − (m11 d_c + m22 d_b) ξ² + d_b d_c ξ⁴
//! ```
//!
//! With `tr(M) < 0` the only route to growth is `a₂ < 0`, i.e. `ξ²` inside the
//! band between the two positive roots of `a₂`.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::model::{steady_state, Equilibrium, ModelParams};

/// Relative tolerance for the equilibrium identity `m11 == turing_condition_value`.
pub const EQUILIBRIUM_IDENTITY_TOL: f64 = 1e-9;

/// Number of samples in the default dispersion curve.
pub const DEFAULT_DISPERSION_SAMPLES: usize = 512;

/// Linearization matrix `M` at `(beta_bar, gamma_bar)`, entries in 1/min.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jacobian2x2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Jacobian2x2 {
    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Eigenvalues as `(re, im)` pairs, larger real part first.
    pub fn eigenvalues(&self) -> [(f64, f64); 2] {
        quadratic_roots(-self.trace(), self.det())
    }
}

/// Roots of `λ² + b λ + c`, as `(re, im)`, larger real part first.
///
/// The real branch avoids cancellation by forming the larger-magnitude root
/// first and recovering the other from the product `c`.
fn quadratic_roots(b: f64, c: f64) -> [(f64, f64); 2] {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        let re = -0.5 * b;
        let im = 0.5 * (-disc).sqrt();
        return [(re, im), (re, -im)];
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return [(0.0, 0.0), (0.0, 0.0)];
    }
    let (r1, r2) = (q, c / q);
    if r1 >= r2 {
        [(r1, 0.0), (r2, 0.0)]
    } else {
        [(r2, 0.0), (r1, 0.0)]
    }
}

/// ODE-level verdict: trace and determinant of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeStability {
    pub trace: f64,
    pub det: f64,
    /// `trace < 0` (strict).
    pub ode_stable: bool,
}

/// Full verdict including the diffusion-driven (Turing) condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub trace: f64,
    pub det: f64,
    pub ode_stable: bool,
    /// `aκβ̄²/(s_b+β̄)² − r_b θ − f_e κ`
    pub turing_condition_value: f64,
    /// `0 < turing_condition_value < r_c` (strict on both sides).
    pub turing: bool,
}

pub fn jacobian(p: &ModelParams, eq: &Equilibrium) -> Result<Jacobian2x2> {
    p.validate()?;
    require_positive("beta_bar", eq.beta_bar)?;
    if eq.beta_bar >= p.b_i {
        return Err(Error::Domain {
            name: "beta_bar",
            value: eq.beta_bar,
            reason: "must lie below the carrying capacity b_i",
        });
    }
    let theta = eq.beta_bar / p.b_i;
    let s = p.s_b / p.b_i;
    let kappa = p.kappa();
    let sat = s + theta;
    Ok(Jacobian2x2 {
        m11: p.r_b * (1.0 - 2.0 * theta)
            - p.a * s * kappa * theta / (sat * sat)
            - p.f_e * kappa * theta,
        m12: -p.a * theta / sat + p.f_e * (1.0 - theta),
        m21: p.f_b,
        m22: -p.r_c,
    })
}

/// Stability of the homogeneous equilibrium under the kinetics alone.
///
/// `det(M) > 0` holds for every admissible parameter set; a non-positive
/// determinant is reported as an internal error.
pub fn ode_stability(j: &Jacobian2x2) -> Result<OdeStability> {
    let trace = j.trace();
    let det = j.det();
    if det.is_nan() || det <= 0.0 {
        return Err(Error::Internal(format!("det(M) = {det:e} is not positive")));
    }
    Ok(OdeStability {
        trace,
        det,
        ode_stable: trace < 0.0,
    })
}

/// Evaluates the Turing condition and checks it against `m11`, which it must
/// equal at the equilibrium.
pub fn turing_classify(
    p: &ModelParams,
    eq: &Equilibrium,
    j: &Jacobian2x2,
) -> Result<StabilityVerdict> {
    let ode = ode_stability(j)?;
    let theta = eq.beta_bar / p.b_i;
    let s = p.s_b / p.b_i;
    let kappa = p.kappa();
    let predation = p.a * kappa * theta * theta / ((s + theta) * (s + theta));
    let value = predation - p.r_b * theta - p.f_e * kappa;

    let scale = j
        .m11
        .abs()
        .max(predation.abs())
        .max(p.r_b * theta)
        .max(p.f_e * kappa)
        .max(p.r_b + p.f_e * kappa);
    if (value - j.m11).abs() > EQUILIBRIUM_IDENTITY_TOL * scale {
        return Err(Error::Internal(format!(
            "Turing condition value {value:e} differs from m11 = {:e}",
            j.m11
        )));
    }
    Ok(StabilityVerdict {
        trace: ode.trace,
        det: ode.det,
        ode_stable: ode.ode_stable,
        turing_condition_value: value,
        turing: value > 0.0 && value < p.r_c,
    })
}

/// Equilibrium, Jacobian and verdict in one call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearAnalysis {
    pub equilibrium: Equilibrium,
    pub jacobian: Jacobian2x2,
    pub verdict: StabilityVerdict,
}

pub fn analyze(p: &ModelParams) -> Result<LinearAnalysis> {
    let equilibrium = steady_state(p)?;
    let jacobian = jacobian(p, &equilibrium)?;
    let verdict = turing_classify(p, &equilibrium, &jacobian)?;
    Ok(LinearAnalysis {
        equilibrium,
        jacobian,
        verdict,
    })
}

/// Coefficients `(a₁, a₂)` of the characteristic polynomial at squared wavenumber `xi2`.
pub fn characteristic_coefficients(p: &ModelParams, j: &Jacobian2x2, xi2: f64) -> (f64, f64) {
    let a1 = -j.trace() + (p.d_b + p.d_c) * xi2;
    let a2 = j.det() - (j.m11 * p.d_c + j.m22 * p.d_b) * xi2 + p.d_b * p.d_c * xi2 * xi2;
    (a1, a2)
}

/// Both roots `(re, im)` of `λ² + a₁λ + a₂` at `xi2`, largest real part first.
pub fn dispersion_roots(p: &ModelParams, j: &Jacobian2x2, xi2: f64) -> [(f64, f64); 2] {
    let (a1, a2) = characteristic_coefficients(p, j, xi2);
    quadratic_roots(a1, a2)
}

/// Largest real part among the roots of `λ² + a₁λ + a₂` at `xi2`.
pub fn growth_rate(p: &ModelParams, j: &Jacobian2x2, xi2: f64) -> f64 {
    dispersion_roots(p, j, xi2)[0].0
}

/// Positive roots `(Λ₋, Λ₊)` of `a₂(ξ²)`, or `None` when `a₂ > 0` for all `ξ² > 0`.
pub fn band_roots(p: &ModelParams, j: &Jacobian2x2) -> Option<(f64, f64)> {
    let lead = p.d_b * p.d_c;
    let lin = j.m11 * p.d_c + j.m22 * p.d_b;
    let det = j.det();
    let disc = lin * lin - 4.0 * lead * det;
    if lin <= 0.0 || disc <= 0.0 {
        return None;
    }
    let upper = (lin + disc.sqrt()) / (2.0 * lead);
    let lower = det / (lead * upper);
    (lower > 0.0).then_some((lower, upper))
}

/// Small-`δ` approximations of the band edges: `det(M)/(d_c m11)` and `m11/(d_c δ)`.
///
/// Both carry a positive sign; they agree with [`band_roots`] to `O(δ)`.
pub fn taylor_band(p: &ModelParams, j: &Jacobian2x2) -> (f64, f64) {
    (j.det() / (p.d_c * j.m11), j.m11 / (p.d_c * p.delta()))
}

/// Sampled dispersion relation together with the exact unstable band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionCurve {
    pub xi2_samples: Vec<f64>,
    pub growth_rates: Vec<f64>,
    /// `(Λ₋, Λ₊)` when non-empty.
    pub band: Option<(f64, f64)>,
}

impl DispersionCurve {
    pub fn band_nonempty(&self) -> bool {
        self.band.is_some()
    }
}

pub fn unstable_band(curve: &DispersionCurve) -> Option<(f64, f64)> {
    curve.band
}

/// Evaluates the growth rate at arbitrary squared wavenumbers.
pub fn dispersion_at(p: &ModelParams, j: &Jacobian2x2, xi2_samples: Vec<f64>) -> DispersionCurve {
    let growth_rates = xi2_samples.iter().map(|&x| growth_rate(p, j, x)).collect();
    DispersionCurve {
        xi2_samples,
        growth_rates,
        band: band_roots(p, j),
    }
}

/// `samples` evenly spaced squared wavenumbers on `[0, xi2_max]`.
pub fn dispersion(
    p: &ModelParams,
    j: &Jacobian2x2,
    xi2_max: f64,
    samples: usize,
) -> Result<DispersionCurve> {
    require_positive("xi2_max", xi2_max)?;
    if samples < 2 {
        return Err(Error::Domain {
            name: "samples",
            value: samples as f64,
            reason: "need at least two samples",
        });
    }
    let step = xi2_max / (samples - 1) as f64;
    let xs = (0..samples).map(|i| i as f64 * step).collect();
    Ok(dispersion_at(p, j, xs))
}

/// Log-spaced curve over `[Λ₋/100, 100·Λ₊]`, or four decades either side of the
/// minimum of `a₂` when there is no band.
pub fn default_dispersion(p: &ModelParams, j: &Jacobian2x2, samples: usize) -> DispersionCurve {
    let (lo, hi) = match band_roots(p, j) {
        Some((lm, lp)) => (lm / 100.0, lp * 100.0),
        None => {
            let centre = (j.det().abs() / (p.d_b * p.d_c))
                .sqrt()
                .max(f64::MIN_POSITIVE);
            (centre * 1e-4, centre * 1e4)
        }
    };
    dispersion_at(p, j, log_space(lo, hi, samples.max(2)))
}

pub(crate) fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
