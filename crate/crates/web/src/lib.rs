//! Browser bindings for the interactive demo page in `www/`.
//!
//! Three views: the dispersion curve for a chosen `(r_c, a, δ)`, the
//! `(r_c, a)` Turing map, and a live 1-D simulation. Parameters not exposed
//! on the page follow the reference recipe: `f_b = 0.1·r_c` and `f_e`
//! calibrated so the equilibrium sits at 30% of carrying capacity.

use patchy::model::{calibrate_fe, ModelParams, DEFAULT_FB_OVER_RC, DEFAULT_THETA};
use patchy::pattern::peak_positions;
use patchy::scan::{classify_point, linear_axis, ScanRecipe};
use patchy::solver::{Domain1D, InitialCondition, Simulator};
use patchy::stability::{analyze, default_dispersion, DEFAULT_DISPERSION_SAMPLES};
use wasm_bindgen::prelude::*;

/// Reference kinetics with `r_c`, `a` and `δ = d_b/d_c` replaced.
pub fn recipe_params(r_c: f64, a: f64, delta: f64) -> Result<ModelParams, String> {
    let mut raw = ModelParams::reference().without_fe();
    raw.r_c = r_c;
    raw.a = a;
    raw.f_b = DEFAULT_FB_OVER_RC * r_c;
    raw.d_b = delta * raw.d_c;
    let f_e = calibrate_fe(&raw, DEFAULT_THETA).map_err(|e| e.to_string())?;
    let p = raw.with_fe(f_e);
    p.validate().map_err(|e| e.to_string())?;
    Ok(p)
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Dispersion {
    xi2: Vec<f64>,
    growth: Vec<f64>,
    lambda_minus: f64,
    lambda_plus: f64,
    turing: bool,
    ode_stable: bool,
    f_e: f64,
}

#[wasm_bindgen]
impl Dispersion {
    pub fn xi2(&self) -> Vec<f64> {
        self.xi2.clone()
    }

    pub fn growth(&self) -> Vec<f64> {
        self.growth.clone()
    }

    /// NaN when the band is empty.
    #[wasm_bindgen(getter)]
    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }

    #[wasm_bindgen(getter)]
    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }

    #[wasm_bindgen(getter)]
    pub fn turing(&self) -> bool {
        self.turing
    }

    #[wasm_bindgen(getter)]
    pub fn ode_stable(&self) -> bool {
        self.ode_stable
    }

    #[wasm_bindgen(getter)]
    pub fn f_e(&self) -> f64 {
        self.f_e
    }
}

pub fn compute_dispersion(r_c: f64, a: f64, delta: f64) -> Result<Dispersion, String> {
    let p = recipe_params(r_c, a, delta)?;
    let lin = analyze(&p).map_err(|e| e.to_string())?;
    let curve = default_dispersion(&p, &lin.jacobian, DEFAULT_DISPERSION_SAMPLES);
    let (lambda_minus, lambda_plus) = curve.band.unwrap_or((f64::NAN, f64::NAN));
    Ok(Dispersion {
        xi2: curve.xi2_samples,
        growth: curve.growth_rates,
        lambda_minus,
        lambda_plus,
        turing: lin.verdict.turing,
        ode_stable: lin.verdict.ode_stable,
        f_e: p.f_e,
    })
}

#[wasm_bindgen]
pub fn dispersion_curve(r_c: f64, a: f64, delta: f64) -> Result<Dispersion, JsError> {
    compute_dispersion(r_c, a, delta).map_err(|e| JsError::new(&e))
}

/// Row-major verdict codes (2 Turing, 1 stable only, 0 ODE-unstable, −1 infeasible),
/// rows along `r_c`, columns along `a`.
#[wasm_bindgen]
pub fn turing_map(
    r_c_min: f64,
    r_c_max: f64,
    a_min: f64,
    a_max: f64,
    n_rc: usize,
    n_a: usize,
) -> Vec<i8> {
    let base = ModelParams::reference();
    let recipe = ScanRecipe::default();
    let a_axis = linear_axis(a_min, a_max, n_a.max(2));
    linear_axis(r_c_min, r_c_max, n_rc.max(2))
        .into_iter()
        .flat_map(|rc| {
            a_axis
                .iter()
                .map(move |&a| classify_point(&base, &recipe, rc, a).code())
        })
        .collect()
}

/// Live simulation from the reference bacterial spot.
#[wasm_bindgen]
pub struct PatternSim {
    sim: Simulator,
    dx: f64,
}

impl PatternSim {
    pub fn create(
        r_c: f64,
        a: f64,
        delta: f64,
        n_points: usize,
        dt: f64,
    ) -> Result<PatternSim, String> {
        let p = recipe_params(r_c, a, delta)?;
        let dom =
            Domain1D::new(Domain1D::reference().length, n_points).map_err(|e| e.to_string())?;
        let initial = InitialCondition::reference_spot()
            .build(&p, &dom)
            .map_err(|e| e.to_string())?;
        let sim = Simulator::new(&p, &dom, dt, &initial).map_err(|e| e.to_string())?;
        Ok(PatternSim { sim, dx: dom.dx() })
    }

    pub fn run(&mut self, steps: u32) -> Result<(), String> {
        self.sim
            .advance_by(u64::from(steps))
            .map_err(|e| e.to_string())
    }
}

#[wasm_bindgen]
impl PatternSim {
    #[wasm_bindgen(constructor)]
    pub fn new(
        r_c: f64,
        a: f64,
        delta: f64,
        n_points: usize,
        dt: f64,
    ) -> Result<PatternSim, JsError> {
        Self::create(r_c, a, delta, n_points, dt).map_err(|e| JsError::new(&e))
    }

    pub fn advance(&mut self, steps: u32) -> Result<(), JsError> {
        self.run(steps).map_err(|e| JsError::new(&e))
    }

    /// Minutes since the start.
    #[wasm_bindgen(getter)]
    pub fn time(&self) -> f64 {
        self.sim.time()
    }

    /// Bacteria as a fraction of carrying capacity.
    pub fn beta(&self) -> Vec<f64> {
        self.sim.beta_scaled().to_vec()
    }

    /// Phagocytes in units of carrying capacity.
    pub fn gamma(&self) -> Vec<f64> {
        self.sim.gamma_scaled().to_vec()
    }

    pub fn peak_count(&self) -> usize {
        peak_positions(self.sim.beta_scaled(), self.dx, 0.1).map_or(0, |p| p.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_recipe_matches_table() {
        let p = recipe_params(0.02, 0.3129, 1e-3).unwrap();
        assert!((p.f_e / 0.0856 - 1.0).abs() < 5e-3);
        assert!((p.d_b - 1e-13).abs() < 1e-25);
    }

    #[test]
    fn dispersion_view_has_band() {
        let d = compute_dispersion(0.02, 0.3129, 1e-3).unwrap();
        assert!(d.turing && d.ode_stable);
        assert!(d.lambda_minus < d.lambda_plus);
        assert_eq!(d.xi2().len(), d.growth().len());
        let equal = compute_dispersion(0.02, 0.3129, 1.0).unwrap();
        assert!(equal.lambda_minus.is_nan());
    }

    #[test]
    fn infeasible_recipe_is_reported() {
        assert!(compute_dispersion(0.02, 0.01, 1e-3).is_err());
    }

    #[test]
    fn map_has_expected_shape() {
        let m = turing_map(1e-3, 5e-2, 5e-2, 1.0, 8, 10);
        assert_eq!(m.len(), 80);
        assert!(m.contains(&2));
        assert!(m.iter().all(|c| (-1..=2).contains(c)));
    }

    #[test]
    fn live_simulation_advances() {
        let mut s = PatternSim::create(0.02, 0.3129, 1e-3, 600, 1.0).unwrap();
        s.run(120).unwrap();
        assert_eq!(s.time(), 120.0);
        assert!(s.beta().iter().all(|&b| (0.0..1.0).contains(&b)));
        assert_eq!(s.gamma().len(), 600);
    }
}
