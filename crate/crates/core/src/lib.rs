//! Bacteria–phagocyte reaction-diffusion model of patchy gut inflammation.
//!
//! * [`model`]: parameters, kinetics, the positive equilibrium and `f_e` calibration.
//! * [`stability`]: Jacobian, ODE/Turing verdicts, dispersion relation and unstable band.
//! * [`solver`]: semi-implicit 1-D integrator with Neumann ends.
//! * [`pattern`]: peak counting and dominant wavelength of simulated profiles.
//! * [`scan`]: `(r_c, a)` classification map.
//! * [`config`], [`cli`], [`output`]: the `patchy` command-line tool.

pub mod cli;
pub mod config;
pub mod error;
pub mod model;
pub mod output;
pub mod pattern;
pub mod scan;
pub mod solver;
pub mod stability;
mod tridiag;

pub use error::{Error, Result};
pub use model::{
    calibrate_fe, reaction_terms, steady_state, Equilibrium, ModelParams, UncalibratedParams,
};
pub use pattern::{detect_peaks, dominant_wavelength, PatternReport};
pub use scan::{scan_region, ScanGrid, Verdict};
pub use solver::{simulate, step, Domain1D, FieldState, InitialCondition, SimConfig, Simulator};
pub use stability::{
    dispersion, jacobian, ode_stability, turing_classify, unstable_band, DispersionCurve,
    Jacobian2x2, StabilityVerdict,
};
pub use tridiag::NeumannDiffusion;
