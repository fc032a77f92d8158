//! Model parameters, reaction kinetics and the positive homogeneous equilibrium.
//!
//! Bacteria `beta` and phagocytes `gamma` evolve as
//!
//! ```text
//! d_t beta  = r_b (1 - beta/b_i) beta - a beta gamma / (s_b + beta) + f_e (1 - beta/b_i) gamma
//! d_t gamma = f_b beta - r_c gamma
//! ```
//!
//! plus diffusion (see [`crate::solver`]). All rates are in 1/min, densities in
//! units/m³ and diffusivities in m²/min. Internally the equilibrium is solved in
//! the carrying-capacity-scaled variable `theta = beta / b_i`.

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};

/// Relative tolerance on the bisection/quadratic agreement.
pub const ROOT_CROSS_CHECK_TOL: f64 = 1e-9;

/// `(0.3129·0.1·0.3/(0.31·0.7) − 0.0347)/0.1`: the calibrated porosity feedback
/// of the reference set at `θ = 0.3`.
pub const REFERENCE_FE: f64 = 0.085_580_645_161_290_4;

/// Default equilibrium bacterial fraction used by the calibration recipe.
pub const DEFAULT_THETA: f64 = 0.3;

/// Ratio `f_b / r_c` used by the calibration recipe (phagocytes at a tenth of bacteria).
pub const DEFAULT_FB_OVER_RC: f64 = 0.1;

/// The nine coefficients of the reaction-diffusion system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Bacterial reproduction rate.
    pub r_b: f64,
    /// Phagocyte intrinsic death rate.
    pub r_c: f64,
    /// Bacterial diffusivity.
    pub d_b: f64,
    /// Phagocyte diffusivity.
    pub d_c: f64,
    /// Luminal carrying capacity.
    pub b_i: f64,
    /// Immune recruitment rate.
    pub f_b: f64,
    /// Maximal phagocytosis rate (inverse handling time).
    pub a: f64,
    /// Half-saturation density of the phagocytosis response.
    pub s_b: f64,
    /// Epithelial porosity feedback.
    pub f_e: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::reference()
    }
}

impl ModelParams {
    /// Reference parameter set for the inflamed gut, with `f_e` at the
    /// unrounded value that puts the equilibrium at exactly 30% of `b_i`.
    pub const fn reference() -> Self {
        Self {
            f_e: REFERENCE_FE,
            ..Self::reference_rounded()
        }
    }

    /// Reference set with `f_e` rounded to 0.0856 as usually quoted; its
    /// equilibrium sits about 1e-4 above `θ = 0.3`.
    pub const fn reference_rounded() -> Self {
        Self {
            r_b: 0.0347,
            r_c: 0.02,
            d_b: 1e-13,
            d_c: 1e-10,
            b_i: 1e17,
            f_b: 0.002,
            a: 0.3129,
            s_b: 1e15,
            f_e: 0.0856,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("r_b", self.r_b)?;
        require_positive("r_c", self.r_c)?;
        require_positive("d_b", self.d_b)?;
        require_positive("d_c", self.d_c)?;
        require_positive("b_i", self.b_i)?;
        require_positive("f_b", self.f_b)?;
        require_positive("a", self.a)?;
        require_positive("s_b", self.s_b)?;
        require_positive("f_e", self.f_e)?;
        require_positive("kappa", self.kappa())?;
        require_positive("delta", self.delta())?;
        Ok(())
    }

    /// Equilibrium phagocyte-to-bacteria ratio `f_b / r_c`.
    pub fn kappa(&self) -> f64 {
        self.f_b / self.r_c
    }

    /// Diffusivity ratio `d_b / d_c`.
    pub fn delta(&self) -> f64 {
        self.d_b / self.d_c
    }

    /// Handling time `1 / a` in minutes.
    pub fn handling_time(&self) -> f64 {
        1.0 / self.a
    }

    /// Encounter rate per unit bacterial density, `a / s_b`.
    pub fn encounter_rate(&self) -> f64 {
        self.a / self.s_b
    }

    /// The same parameters with `f_e` removed, for recalibration.
    pub fn without_fe(&self) -> UncalibratedParams {
        UncalibratedParams {
            r_b: self.r_b,
            r_c: self.r_c,
            d_b: self.d_b,
            d_c: self.d_c,
            b_i: self.b_i,
            f_b: self.f_b,
            a: self.a,
            s_b: self.s_b,
        }
    }

    /// Equilibrium characteristic `F(beta)`; its unique root in `(0, b_i)` is the steady state.
    pub fn equilibrium_residual(&self, beta: f64) -> f64 {
        let theta = beta / self.b_i;
        self.scaled_residual(theta)
    }

    fn scaled_residual(&self, theta: f64) -> f64 {
        let kappa = self.kappa();
        let s = self.s_b / self.b_i;
        (self.r_b + self.f_e * kappa) * (1.0 - theta) - self.a * kappa * theta / (s + theta)
    }
}

/// [`ModelParams`] before the porosity feedback `f_e` has been chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncalibratedParams {
    pub r_b: f64,
    pub r_c: f64,
    pub d_b: f64,
    pub d_c: f64,
    pub b_i: f64,
    pub f_b: f64,
    pub a: f64,
    pub s_b: f64,
}

impl UncalibratedParams {
    pub fn with_fe(&self, f_e: f64) -> ModelParams {
        ModelParams {
            r_b: self.r_b,
            r_c: self.r_c,
            d_b: self.d_b,
            d_c: self.d_c,
            b_i: self.b_i,
            f_b: self.f_b,
            a: self.a,
            s_b: self.s_b,
            f_e,
        }
    }
}

/// Positive homogeneous steady state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub beta_bar: f64,
    pub gamma_bar: f64,
    /// `beta_bar / b_i`
    pub theta: f64,
}

/// Reaction right-hand sides at a single point, without diffusion.
pub fn reaction_terms(p: &ModelParams, beta: f64, gamma: f64) -> Result<(f64, f64)> {
    require_non_negative("beta", beta)?;
    require_non_negative("gamma", gamma)?;
    let logistic = 1.0 - beta / p.b_i;
    let d_beta =
        p.r_b * logistic * beta - p.a * beta * gamma / (p.s_b + beta) + p.f_e * logistic * gamma;
    let d_gamma = p.f_b * beta - p.r_c * gamma;
    Ok((d_beta, d_gamma))
}

/// Unique positive equilibrium, by bisection on `(0, b_i)` cross-checked
/// against the positive root of the cleared-denominator quadratic.
pub fn steady_state(p: &ModelParams) -> Result<Equilibrium> {
    p.validate()?;
    let theta_bisect = bisect_theta(p);
    let theta_quad = quadratic_theta(p);
    let scale = theta_quad.abs().max(f64::MIN_POSITIVE);
    if (theta_bisect - theta_quad).abs() > ROOT_CROSS_CHECK_TOL * scale {
        return Err(Error::Internal(format!(
            "equilibrium roots disagree: bisection theta = {theta_bisect:e}, quadratic theta = {theta_quad:e}"
        )));
    }
    let beta_bar = theta_bisect * p.b_i;
    Ok(Equilibrium {
        beta_bar,
        gamma_bar: p.kappa() * beta_bar,
        theta: theta_bisect,
    })
}

/// F(0) > 0 and F(1) < 0 in scaled form, and F is strictly decreasing, so the
/// bracket always holds. Runs until the bracket stops shrinking.
fn bisect_theta(p: &ModelParams) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if p.scaled_residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Clearing denominators gives `c θ² − (c(1−s) − aκ) θ − c s = 0` with
/// `c = r_b + f_e κ`, `s = s_b/b_i`. The product of roots is `−s < 0`, so the
/// other root is always negative.
fn quadratic_theta(p: &ModelParams) -> f64 {
    let kappa = p.kappa();
    let s = p.s_b / p.b_i;
    let c = p.r_b + p.f_e * kappa;
    let b = c * (1.0 - s) - p.a * kappa;
    let disc = (b * b + 4.0 * c * c * s).sqrt();
    if b >= 0.0 {
        (b + disc) / (2.0 * c)
    } else {
        2.0 * c * s / (disc - b)
    }
}

/// Porosity feedback `f_e` that places the equilibrium at `theta_target · b_i`.
pub fn calibrate_fe(p: &UncalibratedParams, theta_target: f64) -> Result<f64> {
    require_positive("r_b", p.r_b)?;
    require_positive("r_c", p.r_c)?;
    require_positive("d_b", p.d_b)?;
    require_positive("d_c", p.d_c)?;
    require_positive("b_i", p.b_i)?;
    require_positive("f_b", p.f_b)?;
    require_non_negative("a", p.a)?;
    require_positive("s_b", p.s_b)?;
    if !(theta_target > 0.0 && theta_target < 1.0) {
        return Err(Error::Domain {
            name: "theta_target",
            value: theta_target,
            reason: "must lie strictly inside (0, 1)",
        });
    }
    let kappa = p.f_b / p.r_c;
    let beta_bar = theta_target * p.b_i;
    let predation = p.a * kappa * beta_bar / ((p.s_b + beta_bar) * (1.0 - theta_target));
    let f_e = (predation - p.r_b) / kappa;
    if f_e.is_finite() && f_e > 0.0 {
        Ok(f_e)
    } else {
        Err(Error::InfeasibleCalibration {
            f_e,
            theta: theta_target,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn trivial_state_has_zero_reaction() {
        let p = ModelParams::reference();
        assert_eq!(reaction_terms(&p, 0.0, 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn reaction_without_phagocytes() {
        let p = ModelParams::reference();
        let (db, dg) = reaction_terms(&p, 1e15, 0.0).unwrap();
        // 0.0347 * 0.99 * 1e15, 0.002 * 1e15
        assert!(rel(db, 3.4353e13) < 1e-12);
        assert!(rel(dg, 2e12) < 1e-12);
    }

    #[test]
    fn reaction_rejects_negative_and_nan() {
        let p = ModelParams::reference();
        assert!(matches!(
            reaction_terms(&p, -1.0, 0.0),
            Err(Error::Domain { name: "beta", .. })
        ));
        assert!(reaction_terms(&p, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn reference_equilibrium() {
        let eq = steady_state(&ModelParams::reference()).unwrap();
        assert!(rel(eq.beta_bar, 3.0e16) < 1e-6, "{eq:?}");
        assert!(rel(eq.gamma_bar, 3.0e15) < 1e-6);
        assert!(rel(eq.theta, 0.3) < 1e-6);
        assert_eq!(eq.gamma_bar, ModelParams::reference().kappa() * eq.beta_bar);
    }

    #[test]
    fn vanishing_predation_gives_logistic_capacity() {
        let p = ModelParams {
            a: 1e-12,
            ..ModelParams::reference()
        };
        let eq = steady_state(&p).unwrap();
        assert!(rel(eq.beta_bar, p.b_i) < 1e-9);
        assert!(eq.beta_bar < p.b_i);
    }

    #[test]
    fn reference_fe_is_calibrated_value() {
        let f_e = calibrate_fe(&ModelParams::reference().without_fe(), 0.3).unwrap();
        assert!(rel(REFERENCE_FE, f_e) < 1e-15);
    }

    #[test]
    fn printed_fe_shifts_equilibrium_slightly() {
        let eq = steady_state(&ModelParams::reference_rounded()).unwrap();
        assert!(rel(eq.theta, 0.3) > 1e-5);
        assert!(rel(eq.theta, 0.3) < 1e-3);
    }

    #[test]
    fn reference_calibration() {
        let f_e = calibrate_fe(&ModelParams::reference().without_fe(), 0.3).unwrap();
        // a κ β̄ / ((s_b + β̄)(1 − θ)) − r_b = 0.3129·0.1·(30/31)/0.7 − 0.0347
        let by_hand = (0.3129 * 0.1 * (30.0 / 31.0) / 0.7 - 0.0347) / 0.1;
        assert!(rel(f_e, by_hand) < 1e-12);
        assert!(rel(f_e, 0.0856) < 5e-3);
        assert!(rel(f_e, 0.08557) < 1e-3);
    }

    #[test]
    fn calibration_without_predation_is_infeasible() {
        let mut p = ModelParams::reference().without_fe();
        p.a = 0.0;
        assert!(matches!(
            calibrate_fe(&p, 0.3),
            Err(Error::InfeasibleCalibration { .. })
        ));
    }

    #[test]
    fn calibration_rejects_bad_theta() {
        let p = ModelParams::reference().without_fe();
        assert!(calibrate_fe(&p, 0.0).is_err());
        assert!(calibrate_fe(&p, 1.0).is_err());
    }

    #[test]
    fn validation_names_offending_field() {
        let p = ModelParams {
            d_c: 0.0,
            ..ModelParams::reference()
        };
        assert!(matches!(
            p.validate(),
            Err(Error::Domain { name: "d_c", .. })
        ));
    }

    #[test]
    fn derived_aliases() {
        let p = ModelParams::reference();
        assert!(rel(p.kappa(), 0.1) < 1e-15);
        assert!(rel(p.delta(), 1e-3) < 1e-12);
        assert!(rel(p.handling_time() * p.a, 1.0) < 1e-15);
        assert!(rel(p.encounter_rate() * p.s_b, p.a) < 1e-15);
    }
}
