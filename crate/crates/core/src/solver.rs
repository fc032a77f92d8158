//! Semi-implicit 1-D integrator: forward-Euler reaction, backward-Euler
//! diffusion with reflecting Neumann ends.
//!
//! Fields are evolved scaled by the carrying capacity (`u = beta / b_i`,
//! `v = gamma / b_i`); [`FieldState`] always carries physical densities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result, Species};
use crate::model::{steady_state, ModelParams};
use crate::tridiag::NeumannDiffusion;

/// Minimum number of grid nodes.
pub const MIN_POINTS: usize = 16;

/// Negative values above `-NEGATIVE_CLAMP_TOL · b_i` are treated as round-off and clamped to zero.
pub const NEGATIVE_CLAMP_TOL: f64 = 1e-12;

/// Fraction of the fastest reaction time scale allowed per explicit step.
pub const DT_SAFETY: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain1D {
    /// Interval length in metres.
    pub length: f64,
    pub n_points: usize,
}

impl Domain1D {
    pub fn new(length: f64, n_points: usize) -> Result<Self> {
        let d = Self { length, n_points };
        d.validate()?;
        Ok(d)
    }

    /// 3 cm resolved by 3000 nodes.
    pub const fn reference() -> Self {
        Self {
            length: 0.03,
            n_points: 3000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("length", self.length)?;
        if self.n_points < MIN_POINTS {
            return Err(Error::Domain {
                name: "n_points",
                value: self.n_points as f64,
                reason: "need at least 16 nodes",
            });
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        self.length / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }
}

/// Paired profiles at one instant, in physical units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldState {
    /// Minutes.
    pub time: f64,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl FieldState {
    pub fn homogeneous(n: usize, beta: f64, gamma: f64) -> Self {
        Self {
            time: 0.0,
            beta: vec![beta; n],
            gamma: vec![gamma; n],
        }
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }
}

/// Initial profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InitialCondition {
    /// Bacterial spot of `amplitude` on `|x − center| ≤ half_width` over a
    /// `background`; no phagocytes.
    Spot {
        center: f64,
        half_width: f64,
        amplitude: f64,
        background: f64,
    },
    /// Homogeneous equilibrium with independent uniform relative noise
    /// `±rel_noise` on every node of both species.
    PerturbedEquilibrium { rel_noise: f64, seed: u64 },
}

impl InitialCondition {
    /// A 1e15 units/m³ spot, 1e-4 m wide, in the middle of [`Domain1D::reference`].
    pub const fn reference_spot() -> Self {
        InitialCondition::Spot {
            center: 0.015,
            half_width: 5e-5,
            amplitude: 1e15,
            background: 0.0,
        }
    }

    pub fn build(&self, p: &ModelParams, dom: &Domain1D) -> Result<FieldState> {
        dom.validate()?;
        let n = dom.n_points;
        match *self {
            InitialCondition::Spot {
                center,
                half_width,
                amplitude,
                background,
            } => {
                require_non_negative("spot_center", center)?;
                require_non_negative("spot_half_width", half_width)?;
                require_non_negative("spot_amplitude", amplitude)?;
                require_non_negative("background", background)?;
                let beta = (0..n)
                    .map(|i| {
                        if (dom.x(i) - center).abs() <= half_width {
                            background + amplitude
                        } else {
                            background
                        }
                    })
                    .collect();
                Ok(FieldState {
                    time: 0.0,
                    beta,
                    gamma: vec![0.0; n],
                })
            }
            InitialCondition::PerturbedEquilibrium { rel_noise, seed } => {
                require_non_negative("noise", rel_noise)?;
                if rel_noise >= 1.0 {
                    return Err(Error::Domain {
                        name: "noise",
                        value: rel_noise,
                        reason: "relative noise must stay below 1",
                    });
                }
                let eq = steady_state(p)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut jitter =
                    |base: f64| base * (1.0 + rel_noise * rng.random_range(-1.0..=1.0));
                let beta = (0..n).map(|_| jitter(eq.beta_bar)).collect();
                let gamma = (0..n).map(|_| jitter(eq.gamma_bar)).collect();
                Ok(FieldState {
                    time: 0.0,
                    beta,
                    gamma,
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Minutes per step.
    pub dt: f64,
    pub t_end: f64,
    /// Snapshot cadence in minutes; must be a whole number of steps.
    pub snapshot_every: f64,
    pub initial: InitialCondition,
}

impl SimConfig {
    /// Two weeks from the reference spot, one-minute steps, daily snapshots.
    pub const fn reference() -> Self {
        Self {
            dt: 1.0,
            t_end: 20160.0,
            snapshot_every: 1440.0,
            initial: InitialCondition::reference_spot(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("dt", self.dt)?;
        require_positive("t_end", self.t_end)?;
        require_positive("snapshot_every", self.snapshot_every)?;
        if self.t_end < self.dt {
            return Err(Error::Domain {
                name: "t_end",
                value: self.t_end,
                reason: "must be at least one time step",
            });
        }
        self.snapshot_stride()?;
        Ok(())
    }

    pub fn n_steps(&self) -> u64 {
        (self.t_end / self.dt - 1e-9).ceil().max(1.0) as u64
    }

    /// Steps between snapshots.
    pub fn snapshot_stride(&self) -> Result<u64> {
        let ratio = self.snapshot_every / self.dt;
        let k = ratio.round();
        if k < 1.0 || (ratio - k).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::Domain {
                name: "snapshot_every",
                value: self.snapshot_every,
                reason: "must be a positive multiple of dt",
            });
        }
        Ok(k as u64)
    }
}

/// Reaction kinetics in `b_i`-scaled variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinetics {
    pub r_b: f64,
    pub a: f64,
    /// `s_b / b_i`
    pub s: f64,
    pub f_e: f64,
    pub f_b: f64,
    pub r_c: f64,
}

impl Kinetics {
    pub fn from_params(p: &ModelParams) -> Self {
        Self {
            r_b: p.r_b,
            a: p.a,
            s: p.s_b / p.b_i,
            f_e: p.f_e,
            f_b: p.f_b,
            r_c: p.r_c,
        }
    }

    /// No reactions at all; the stepper then reduces to implicit diffusion.
    pub const fn pure_diffusion() -> Self {
        Self {
            r_b: 0.0,
            a: 0.0,
            s: 1.0,
            f_e: 0.0,
            f_b: 0.0,
            r_c: 0.0,
        }
    }

    #[inline]
    pub fn rates(&self, u: f64, v: f64) -> (f64, f64) {
        let logistic = 1.0 - u;
        let du = self.r_b * logistic * u - self.a * u * v / (self.s + u) + self.f_e * logistic * v;
        let dv = self.f_b * u - self.r_c * v;
        (du, dv)
    }

    /// Fastest per-capita reaction rate, with the phagocyte/bacteria ratio at
    /// its equilibrium value `κ`.
    pub fn fastest_rate(&self) -> f64 {
        let kappa = if self.r_c > 0.0 {
            self.f_b / self.r_c
        } else {
            0.0
        };
        (self.r_b + self.f_e * kappa)
            .max(self.a * kappa)
            .max(self.f_b)
            .max(self.r_c)
    }

    /// Largest admissible explicit step, `DT_SAFETY / fastest_rate`.
    pub fn max_dt(&self) -> f64 {
        let rate = self.fastest_rate();
        if rate > 0.0 {
            DT_SAFETY / rate
        } else {
            f64::INFINITY
        }
    }
}

/// Largest time step accepted by [`step`] and [`simulate`] for these parameters.
pub fn max_stable_dt(p: &ModelParams) -> f64 {
    Kinetics::from_params(p).max_dt()
}

/// Stateful integrator holding the pre-factored diffusion operators.
#[derive(Debug, Clone)]
pub struct Simulator {
    kinetics: Kinetics,
    b_i: f64,
    dt: f64,
    t0: f64,
    steps: u64,
    beta_op: NeumannDiffusion,
    gamma_op: NeumannDiffusion,
    u: Vec<f64>,
    v: Vec<f64>,
    check_capacity: bool,
}

impl Simulator {
    pub fn new(p: &ModelParams, dom: &Domain1D, dt: f64, initial: &FieldState) -> Result<Self> {
        p.validate()?;
        Self::with_kinetics(
            Kinetics::from_params(p),
            p.d_b,
            p.d_c,
            p.b_i,
            dom,
            dt,
            initial,
        )
    }

    /// Integrator with arbitrary (possibly degenerate) kinetics.
    pub fn with_kinetics(
        kinetics: Kinetics,
        d_b: f64,
        d_c: f64,
        b_i: f64,
        dom: &Domain1D,
        dt: f64,
        initial: &FieldState,
    ) -> Result<Self> {
        dom.validate()?;
        require_positive("dt", dt)?;
        require_positive("d_b", d_b)?;
        require_positive("d_c", d_c)?;
        require_positive("b_i", b_i)?;
        let max_dt = kinetics.max_dt();
        if dt > max_dt {
            return Err(Error::TimeStepTooLarge { dt, max_dt });
        }
        let n = dom.n_points;
        if initial.beta.len() != n || initial.gamma.len() != n {
            return Err(Error::Domain {
                name: "initial",
                value: initial.beta.len() as f64,
                reason: "profile length does not match the grid",
            });
        }
        for (i, (&b, &g)) in initial.beta.iter().zip(&initial.gamma).enumerate() {
            for (species, value) in [(Species::Bacteria, b), (Species::Phagocytes, g)] {
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::InvariantViolation {
                        time: initial.time,
                        node: i,
                        species,
                        value,
                        reason: "initial value must be finite and non-negative",
                    });
                }
            }
        }
        let u: Vec<f64> = initial.beta.iter().map(|&b| b / b_i).collect();
        let v: Vec<f64> = initial.gamma.iter().map(|&g| g / b_i).collect();
        let check_capacity = u.iter().all(|&x| x < 1.0);
        let dx2 = dom.dx() * dom.dx();
        Ok(Self {
            kinetics,
            b_i,
            dt,
            t0: initial.time,
            steps: 0,
            beta_op: NeumannDiffusion::new(n, d_b * dt / dx2),
            gamma_op: NeumannDiffusion::new(n, d_c * dt / dx2),
            u,
            v,
            check_capacity,
        })
    }

    pub fn time(&self) -> f64 {
        self.t0 + self.steps as f64 * self.dt
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }

    /// Bacteria as a fraction of carrying capacity.
    pub fn beta_scaled(&self) -> &[f64] {
        &self.u
    }

    /// Phagocytes in units of carrying capacity.
    pub fn gamma_scaled(&self) -> &[f64] {
        &self.v
    }

    pub fn state(&self) -> FieldState {
        FieldState {
            time: self.time(),
            beta: self.u.iter().map(|&x| x * self.b_i).collect(),
            gamma: self.v.iter().map(|&x| x * self.b_i).collect(),
        }
    }

    /// One step: explicit reaction, then the two implicit diffusion solves.
    pub fn advance(&mut self) -> Result<()> {
        let dt = self.dt;
        for (u, v) in self.u.iter_mut().zip(self.v.iter_mut()) {
            let (du, dv) = self.kinetics.rates(*u, *v);
            *u += dt * du;
            *v += dt * dv;
        }
        self.beta_op.solve_in_place(&mut self.u);
        self.gamma_op.solve_in_place(&mut self.v);
        self.steps += 1;
        self.enforce_invariants()
    }

    pub fn advance_by(&mut self, steps: u64) -> Result<()> {
        for _ in 0..steps {
            self.advance()?;
        }
        Ok(())
    }

    fn enforce_invariants(&mut self) -> Result<()> {
        let time = self.time();
        let b_i = self.b_i;
        let check_capacity = self.check_capacity;
        for (species, field) in [
            (Species::Bacteria, &mut self.u),
            (Species::Phagocytes, &mut self.v),
        ] {
            for (node, x) in field.iter_mut().enumerate() {
                let value = *x;
                let violation = |reason| Error::InvariantViolation {
                    time,
                    node,
                    species,
                    value: value * b_i,
                    reason,
                };
                if !value.is_finite() {
                    return Err(violation("non-finite value"));
                }
                if value < 0.0 {
                    if value < -NEGATIVE_CLAMP_TOL {
                        return Err(violation("negative density"));
                    }
                    *x = 0.0;
                }
                if check_capacity && species == Species::Bacteria && value >= 1.0 {
                    return Err(violation("bacteria reached the carrying capacity"));
                }
            }
        }
        Ok(())
    }
}

/// Advances `s` by one step of length `dt`.
pub fn step(p: &ModelParams, dom: &Domain1D, s: &FieldState, dt: f64) -> Result<FieldState> {
    let mut sim = Simulator::new(p, dom, dt, s)?;
    sim.advance()?;
    Ok(sim.state())
}

/// Runs to `t_end`, calling `observe` on the initial state, every
/// `snapshot_every` minutes, and on the final state.
pub fn simulate_with<F>(
    p: &ModelParams,
    dom: &Domain1D,
    cfg: &SimConfig,
    mut observe: F,
) -> Result<()>
where
    F: FnMut(&FieldState),
{
    cfg.validate()?;
    let initial = cfg.initial.build(p, dom)?;
    let mut sim = Simulator::new(p, dom, cfg.dt, &initial)?;
    let stride = cfg.snapshot_stride()?;
    let n_steps = cfg.n_steps();
    observe(&initial);
    for k in 1..=n_steps {
        sim.advance()?;
        if k % stride == 0 || k == n_steps {
            observe(&sim.state());
        }
    }
    Ok(())
}

/// Collects every snapshot emitted by [`simulate_with`].
pub fn simulate(p: &ModelParams, dom: &Domain1D, cfg: &SimConfig) -> Result<Vec<FieldState>> {
    let mut out = Vec::new();
    simulate_with(p, dom, cfg, |s| out.push(s.clone()))?;
    Ok(out)
}

/// Discrete mass `∫ f dx` under the trapezoidal rule, which is exactly what
/// the reflecting-boundary diffusion operator conserves.
pub fn discrete_mass(values: &[f64], dx: f64) -> f64 {
    let n = values.len();
    match n {
        0 => 0.0,
        1 => values[0] * dx,
        _ => {
            let interior: f64 = values[1..n - 1].iter().sum();
            dx * (interior + 0.5 * (values[0] + values[n - 1]))
        }
    }
}
