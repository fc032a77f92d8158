//! Randomized properties across the analysis modules.

use proptest::prelude::*;

use patchy::model::{calibrate_fe, steady_state, ModelParams};
use patchy::pattern::{dominant_mode, peak_positions};
use patchy::scan::{classify_point, scan_region, ScanRecipe};
use patchy::stability::{analyze, band_roots};

fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

prop_compose! {
    fn params()(
        r_b in log_range(1e-3, 1.0),
        r_c in log_range(1e-3, 1.0),
        d_c in log_range(1e-12, 1e-8),
        delta in log_range(1e-4, 1.0),
        b_i in log_range(1e14, 1e20),
        f_b in log_range(1e-4, 1.0),
        a in log_range(1e-3, 10.0),
        s in log_range(1e-4, 1.0),
        f_e in log_range(1e-4, 1.0),
    ) -> ModelParams {
        ModelParams { r_b, r_c, d_b: delta * d_c, d_c, b_i, f_b, a, s_b: s * b_i, f_e }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn residual_is_decreasing(p in params(), x in 0.0..1.0f64, y in 0.0..1.0f64) {
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        prop_assume!(hi - lo > 1e-9);
        prop_assert!(p.equilibrium_residual(lo * p.b_i) > p.equilibrium_residual(hi * p.b_i));
    }

    #[test]
    fn equilibrium_is_interior_root(p in params()) {
        let eq = steady_state(&p).unwrap();
        prop_assert!(eq.theta > 0.0 && eq.theta < 1.0);
        let scale = p.r_b + p.f_e * p.kappa() + p.a * p.kappa();
        prop_assert!(p.equilibrium_residual(eq.beta_bar).abs() < 1e-12 * scale);
        prop_assert!((eq.gamma_bar - p.kappa() * eq.beta_bar).abs() <= 1e-15 * eq.gamma_bar);
    }

    #[test]
    fn calibration_round_trips(p in params(), theta in 0.01..0.99f64) {
        if let Ok(f_e) = calibrate_fe(&p.without_fe(), theta) {
            let eq = steady_state(&p.without_fe().with_fe(f_e)).unwrap();
            prop_assert!((eq.theta / theta - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn verdict_is_consistent(p in params()) {
        let a = analyze(&p).unwrap();
        prop_assert!(a.jacobian.det() > 0.0);
        prop_assert!(!a.verdict.turing || a.verdict.ode_stable);
        // The condition is necessary for diffusion-driven instability; whether a
        // band actually opens also depends on δ.
        if a.verdict.ode_stable && band_roots(&p, &a.jacobian).is_some() {
            prop_assert!(a.verdict.turing);
        }
    }

    #[test]
    fn band_widens_as_bacteria_slow_down(p in params(), shrink in 0.01..0.99f64) {
        let a = analyze(&p).unwrap();
        let slower = ModelParams { d_b: p.d_b * shrink, ..p };
        if let Some((lo, hi)) = band_roots(&p, &a.jacobian) {
            let (lo2, hi2) = band_roots(&slower, &a.jacobian).unwrap();
            prop_assert!(lo2 <= lo * (1.0 + 1e-12) && hi2 >= hi * (1.0 - 1e-12));
        }
    }

    #[test]
    fn peaks_ignore_scale(values in prop::collection::vec(0.0..1.0f64, 16..200), c in log_range(1e-6, 1e20)) {
        let scaled: Vec<f64> = values.iter().map(|v| v * c).collect();
        let a = peak_positions(&values, 1e-5, 0.1).unwrap();
        let b = peak_positions(&scaled, 1e-5, 0.1).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn single_mode_is_recovered(k in 1usize..200, n in 400usize..1200, phase_amp in 0.1..5.0f64) {
        let values: Vec<f64> = (0..n)
            .map(|i| 2.0 * phase_amp + phase_amp * (std::f64::consts::PI * (k * i) as f64 / (n - 1) as f64).cos())
            .collect();
        prop_assert_eq!(dominant_mode(&values).unwrap(), k);
    }
}

#[test]
fn turing_condition_value_equals_m11_across_random_sets() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    runner
        .run(&params(), |p| {
            let a = analyze(&p).unwrap();
            let diff = (a.verdict.turing_condition_value - a.jacobian.m11).abs();
            prop_assert!(diff <= 1e-9 * a.jacobian.m11.abs().max(1e-300));
            Ok(())
        })
        .unwrap();
}

#[test]
fn scan_grid_matches_pointwise_classification() {
    let base = ModelParams::reference();
    let grid = scan_region(&base, (1e-3, 5e-2), (5e-2, 1.0), (23, 31)).unwrap();
    let recipe = ScanRecipe::default();
    for (i, &rc) in grid.r_c_axis.iter().enumerate() {
        for (j, &a) in grid.a_axis.iter().enumerate() {
            assert_eq!(grid.get(i, j), classify_point(&base, &recipe, rc, a));
        }
    }
    assert_eq!(
        grid,
        scan_region(&base, (1e-3, 5e-2), (5e-2, 1.0), (23, 31)).unwrap()
    );
}

#[test]
fn refined_scan_agrees_on_shared_nodes() {
    let base = ModelParams::reference();
    let coarse = scan_region(&base, (1e-3, 5e-2), (5e-2, 1.0), (11, 11)).unwrap();
    let fine = scan_region(&base, (1e-3, 5e-2), (5e-2, 1.0), (21, 21)).unwrap();
    for i in 0..11 {
        for j in 0..11 {
            assert_eq!(coarse.get(i, j), fine.get(2 * i, 2 * j));
        }
    }
}
