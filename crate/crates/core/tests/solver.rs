//! Whole-run properties of the integrator.

use patchy::model::{steady_state, ModelParams};
use patchy::pattern::{dominant_wavelength, spatial_variance};
use patchy::solver::{simulate, Domain1D, FieldState, InitialCondition, SimConfig};
use patchy::stability::{analyze, band_roots};

fn final_state(p: &ModelParams, dom: &Domain1D, cfg: &SimConfig) -> FieldState {
    simulate(p, dom, cfg).unwrap().pop().unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= tol * x.abs().max(y.abs()))
}

#[test]
fn diffusivity_and_length_rescaling_leaves_profiles_unchanged() {
    let p = ModelParams::reference();
    // Rounding differences in d·dt/dx² (≈1e-16) are amplified by the Turing
    // instability by roughly 1e3 per day, so the comparison covers one day.
    let cfg = SimConfig {
        t_end: 1440.0,
        snapshot_every: 1440.0,
        ..SimConfig::reference()
    };
    let base = final_state(
        &p,
        &Domain1D::new(0.01, 1000).unwrap(),
        &SimConfig {
            initial: InitialCondition::Spot {
                center: 0.005,
                half_width: 5e-5,
                amplitude: 1e15,
                background: 0.0,
            },
            ..cfg
        },
    );
    for sigma in [4.0_f64, 2.5, 0.1] {
        let k = sigma.sqrt();
        let scaled = ModelParams {
            d_b: p.d_b * sigma,
            d_c: p.d_c * sigma,
            ..p
        };
        let dom = Domain1D::new(0.01 * k, 1000).unwrap();
        let run = SimConfig {
            initial: InitialCondition::Spot {
                center: 0.005 * k,
                half_width: 5e-5 * k,
                amplitude: 1e15,
                background: 0.0,
            },
            ..cfg
        };
        let s = final_state(&scaled, &dom, &run);
        assert!(
            close(&base.beta, &s.beta, 1e-9),
            "beta differs at sigma = {sigma}"
        );
        assert!(
            close(&base.gamma, &s.gamma, 1e-9),
            "gamma differs at sigma = {sigma}"
        );
    }
}

#[test]
fn halving_dx_keeps_dominant_wavelength() {
    let p = ModelParams::reference();
    let cfg = SimConfig::reference();
    let coarse = Domain1D::reference();
    let fine = Domain1D::new(coarse.length, 2 * coarse.n_points - 1).unwrap();
    let (_, wl_coarse) = dominant_wavelength(&final_state(&p, &coarse, &cfg), &coarse).unwrap();
    let (_, wl_fine) = dominant_wavelength(&final_state(&p, &fine, &cfg), &fine).unwrap();
    let change = (wl_fine / wl_coarse - 1.0).abs();
    assert!(change < 0.05);
}

#[test]
fn small_perturbation_grows_inside_band() {
    let p = ModelParams::reference();
    let dom = Domain1D::reference();
    let cfg = SimConfig {
        t_end: 10080.0,
        snapshot_every: 720.0,
        initial: InitialCondition::PerturbedEquilibrium {
            rel_noise: 1e-3,
            seed: 11,
        },
        ..SimConfig::reference()
    };
    let snaps = simulate(&p, &dom, &cfg).unwrap();
    let v0 = spatial_variance(&snaps[0].beta);
    let vmax = snaps
        .iter()
        .map(|s| spatial_variance(&s.beta))
        .fold(0.0, f64::max);
    assert!(vmax >= 10.0 * v0);
    let a = analyze(&p).unwrap();
    let (lo, hi) = band_roots(&p, &a.jacobian).unwrap();
    let (xi2, _) = dominant_wavelength(snaps.last().unwrap(), &dom).unwrap();
    assert!(lo < xi2 && xi2 < hi);
}

#[test]
fn equilibrium_start_stays_put_for_a_week() {
    let p = ModelParams::reference();
    let eq = steady_state(&p).unwrap();
    let dom = Domain1D::new(0.003, 300).unwrap();
    let cfg = SimConfig {
        t_end: 10080.0,
        snapshot_every: 10080.0,
        initial: InitialCondition::PerturbedEquilibrium {
            rel_noise: 0.0,
            seed: 0,
        },
        ..SimConfig::reference()
    };
    let s = final_state(&p, &dom, &cfg);
    assert!(s
        .beta
        .iter()
        .all(|&b| (b / eq.beta_bar - 1.0).abs() < 1e-10));
    assert!(s
        .gamma
        .iter()
        .all(|&g| (g / eq.gamma_bar - 1.0).abs() < 1e-10));
}

#[test]
fn runs_are_reproducible() {
    let p = ModelParams::reference();
    let dom = Domain1D::new(0.003, 300).unwrap();
    let cfg = SimConfig {
        t_end: 1440.0,
        snapshot_every: 360.0,
        initial: InitialCondition::PerturbedEquilibrium {
            rel_noise: 1e-3,
            seed: 5,
        },
        ..SimConfig::reference()
    };
    assert_eq!(
        simulate(&p, &dom, &cfg).unwrap(),
        simulate(&p, &dom, &cfg).unwrap()
    );
}
