//! Flat `key = value` run configuration.
//!
//! Omitted kinetic keys fall back to the reference parameter set. `f_e` is
//! either given, calibrated from `theta_target`, or left at its reference
//! value when neither key is present.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{calibrate_fe, ModelParams};
use crate::pattern::DEFAULT_PEAK_THRESHOLD;
use crate::solver::{Domain1D, InitialCondition, SimConfig};
use crate::stability::DEFAULT_DISPERSION_SAMPLES;

const KEYS: &[&str] = &[
    "r_b",
    "r_c",
    "d_b",
    "d_c",
    "b_i",
    "f_b",
    "a",
    "s_b",
    "f_e",
    "theta_target",
    "length",
    "n_points",
    "dt",
    "t_end",
    "snapshot_every",
    "initial",
    "spot_center",
    "spot_half_width",
    "spot_amplitude",
    "background",
    "noise",
    "scan_rc_min",
    "scan_rc_max",
    "scan_a_min",
    "scan_a_max",
    "scan_n_rc",
    "scan_n_a",
    "dispersion_samples",
    "peak_threshold",
    "out_dir",
    "seed",
];

/// How the porosity feedback was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FeSource {
    Given,
    Calibrated { theta_target: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialKind {
    Spot,
    Perturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSettings {
    pub r_c_range: (f64, f64),
    pub a_range: (f64, f64),
    pub resolution: (usize, usize),
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            r_c_range: (1e-3, 5e-2),
            a_range: (5e-2, 1.0),
            resolution: (200, 200),
        }
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: ModelParams,
    pub fe_source: FeSource,
    pub domain: Domain1D,
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_every: f64,
    pub initial: InitialKind,
    pub spot_center: f64,
    pub spot_half_width: f64,
    pub spot_amplitude: f64,
    pub background: f64,
    /// Relative noise amplitude for perturbed starts.
    pub noise: f64,
    pub scan: ScanSettings,
    pub dispersion_samples: usize,
    pub peak_threshold: f64,
    pub out_dir: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let sim = SimConfig::reference();
        let InitialCondition::Spot {
            center,
            half_width,
            amplitude,
            background,
        } = InitialCondition::reference_spot()
        else {
            unreachable!()
        };
        Self {
            params: ModelParams::reference(),
            fe_source: FeSource::Given,
            domain: Domain1D::reference(),
            dt: sim.dt,
            t_end: sim.t_end,
            snapshot_every: sim.snapshot_every,
            initial: InitialKind::Spot,
            spot_center: center,
            spot_half_width: half_width,
            spot_amplitude: amplitude,
            background,
            noise: 1e-3,
            scan: ScanSettings::default(),
            dispersion_samples: DEFAULT_DISPERSION_SAMPLES,
            peak_threshold: DEFAULT_PEAK_THRESHOLD,
            out_dir: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn sim_config(&self) -> SimConfig {
        let initial = match self.initial {
            InitialKind::Spot => InitialCondition::Spot {
                center: self.spot_center,
                half_width: self.spot_half_width,
                amplitude: self.spot_amplitude,
                background: self.background,
            },
            InitialKind::Perturbed => InitialCondition::PerturbedEquilibrium {
                rel_noise: self.noise,
                seed: self.seed,
            },
        };
        SimConfig {
            dt: self.dt,
            t_end: self.t_end,
            snapshot_every: self.snapshot_every,
            initial,
        }
    }

    /// Re-parsable echo of every resolved value.
    pub fn to_manifest(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(s, "# resolved run configuration");
        if let FeSource::Calibrated { theta_target } = self.fe_source {
            let _ = writeln!(s, "# f_e calibrated at theta_target = {theta_target:e}");
        }
        for (k, v) in [
            ("r_b", p.r_b),
            ("r_c", p.r_c),
            ("d_b", p.d_b),
            ("d_c", p.d_c),
            ("b_i", p.b_i),
            ("f_b", p.f_b),
            ("a", p.a),
            ("s_b", p.s_b),
            ("f_e", p.f_e),
            ("length", self.domain.length),
        ] {
            let _ = writeln!(s, "{k} = {v:e}");
        }
        let _ = writeln!(s, "n_points = {}", self.domain.n_points);
        for (k, v) in [
            ("dt", self.dt),
            ("t_end", self.t_end),
            ("snapshot_every", self.snapshot_every),
        ] {
            let _ = writeln!(s, "{k} = {v:e}");
        }
        let kind = match self.initial {
            InitialKind::Spot => "spot",
            InitialKind::Perturbed => "perturbed",
        };
        let _ = writeln!(s, "initial = {kind}");
        for (k, v) in [
            ("spot_center", self.spot_center),
            ("spot_half_width", self.spot_half_width),
            ("spot_amplitude", self.spot_amplitude),
            ("background", self.background),
            ("noise", self.noise),
            ("scan_rc_min", self.scan.r_c_range.0),
            ("scan_rc_max", self.scan.r_c_range.1),
            ("scan_a_min", self.scan.a_range.0),
            ("scan_a_max", self.scan.a_range.1),
        ] {
            let _ = writeln!(s, "{k} = {v:e}");
        }
        let _ = writeln!(s, "scan_n_rc = {}", self.scan.resolution.0);
        let _ = writeln!(s, "scan_n_a = {}", self.scan.resolution.1);
        let _ = writeln!(s, "dispersion_samples = {}", self.dispersion_samples);
        let _ = writeln!(s, "peak_threshold = {:e}", self.peak_threshold);
        if let Some(dir) = &self.out_dir {
            let _ = writeln!(s, "out_dir = {}", dir.display());
        }
        let _ = writeln!(s, "seed = {}", self.seed);
        s
    }
}

struct Entry {
    line: usize,
    value: String,
}

fn num(key: &str, e: &Entry) -> Result<f64> {
    e.value.parse::<f64>().map_err(|_| Error::Parse {
        line: e.line,
        message: format!("`{key}` expects a number, got `{}`", e.value),
    })
}

fn count(key: &str, e: &Entry) -> Result<usize> {
    e.value.parse::<usize>().map_err(|_| Error::Parse {
        line: e.line,
        message: format!("`{key}` expects a non-negative integer, got `{}`", e.value),
    })
}

fn rename(err: Error) -> Error {
    match err {
        Error::Domain {
            name,
            value,
            reason,
        } => Error::Config {
            key: name.to_owned(),
            message: format!("{value} {reason}"),
        },
        other => other,
    }
}

fn invalid(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.to_owned(),
        message: message.into(),
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((k, v)) = body.split_once('=') else {
            return Err(Error::Parse {
                line,
                message: format!("expected `key = value`, got `{body}`"),
            });
        };
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(invalid(k, format!("unknown key (line {line})")));
        }
        if v.is_empty() {
            return Err(Error::Parse {
                line,
                message: format!("`{k}` has no value"),
            });
        }
        let prev = entries.insert(
            k.to_owned(),
            Entry {
                line,
                value: v.to_owned(),
            },
        );
        if let Some(prev) = prev {
            return Err(Error::Parse {
                line,
                message: format!("`{k}` already set on line {}", prev.line),
            });
        }
    }

    let mut cfg = RunConfig::default();
    let get = |k: &str| entries.get(k);

    macro_rules! set_f64 {
        ($key:literal => $($target:tt)+) => {
            if let Some(e) = get($key) {
                $($target)+ = num($key, e)?;
            }
        };
    }
    set_f64!("r_b" => cfg.params.r_b);
    set_f64!("r_c" => cfg.params.r_c);
    set_f64!("d_b" => cfg.params.d_b);
    set_f64!("d_c" => cfg.params.d_c);
    set_f64!("b_i" => cfg.params.b_i);
    set_f64!("f_b" => cfg.params.f_b);
    set_f64!("a" => cfg.params.a);
    set_f64!("s_b" => cfg.params.s_b);
    set_f64!("length" => cfg.domain.length);
    set_f64!("dt" => cfg.dt);
    set_f64!("t_end" => cfg.t_end);
    set_f64!("snapshot_every" => cfg.snapshot_every);
    set_f64!("spot_center" => cfg.spot_center);
    set_f64!("spot_half_width" => cfg.spot_half_width);
    set_f64!("spot_amplitude" => cfg.spot_amplitude);
    set_f64!("background" => cfg.background);
    set_f64!("noise" => cfg.noise);
    set_f64!("scan_rc_min" => cfg.scan.r_c_range.0);
    set_f64!("scan_rc_max" => cfg.scan.r_c_range.1);
    set_f64!("scan_a_min" => cfg.scan.a_range.0);
    set_f64!("scan_a_max" => cfg.scan.a_range.1);
    set_f64!("peak_threshold" => cfg.peak_threshold);

    if let Some(e) = get("n_points") {
        cfg.domain.n_points = count("n_points", e)?;
    }
    if let Some(e) = get("scan_n_rc") {
        cfg.scan.resolution.0 = count("scan_n_rc", e)?;
    }
    if let Some(e) = get("scan_n_a") {
        cfg.scan.resolution.1 = count("scan_n_a", e)?;
    }
    if let Some(e) = get("dispersion_samples") {
        cfg.dispersion_samples = count("dispersion_samples", e)?;
    }
    if let Some(e) = get("seed") {
        cfg.seed = e.value.parse().map_err(|_| Error::Parse {
            line: e.line,
            message: format!(
                "`seed` expects an unsigned 64-bit integer, got `{}`",
                e.value
            ),
        })?;
    }
    if let Some(e) = get("out_dir") {
        cfg.out_dir = Some(PathBuf::from(&e.value));
    }
    if let Some(e) = get("initial") {
        cfg.initial = match e.value.as_str() {
            "spot" => InitialKind::Spot,
            "perturbed" => InitialKind::Perturbed,
            other => {
                return Err(Error::Parse {
                    line: e.line,
                    message: format!("`initial` must be `spot` or `perturbed`, got `{other}`"),
                })
            }
        };
    }

    match (get("f_e"), get("theta_target")) {
        (Some(_), Some(_)) => {
            return Err(invalid(
                "theta_target",
                "cannot be combined with an explicit f_e",
            ))
        }
        (Some(e), None) => {
            cfg.params.f_e = num("f_e", e)?;
            cfg.fe_source = FeSource::Given;
        }
        (None, Some(e)) => {
            let theta_target = num("theta_target", e)?;
            cfg.params.f_e =
                calibrate_fe(&cfg.params.without_fe(), theta_target).map_err(|err| match err {
                    Error::InfeasibleCalibration { .. } => invalid("theta_target", err.to_string()),
                    other => rename(other),
                })?;
            cfg.fe_source = FeSource::Calibrated { theta_target };
        }
        (None, None) => {}
    }

    validate(&cfg).map_err(rename)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<()> {
    use crate::error::{require_non_negative, require_positive};
    cfg.params.validate()?;
    cfg.domain.validate()?;
    cfg.sim_config().validate()?;
    require_non_negative("spot_center", cfg.spot_center)?;
    require_non_negative("spot_half_width", cfg.spot_half_width)?;
    require_non_negative("spot_amplitude", cfg.spot_amplitude)?;
    require_non_negative("background", cfg.background)?;
    require_non_negative("noise", cfg.noise)?;
    if cfg.noise >= 1.0 {
        return Err(invalid("noise", "relative noise must stay below 1"));
    }
    require_positive("scan_rc_min", cfg.scan.r_c_range.0)?;
    require_positive("scan_rc_max", cfg.scan.r_c_range.1)?;
    require_positive("scan_a_min", cfg.scan.a_range.0)?;
    require_positive("scan_a_max", cfg.scan.a_range.1)?;
    if cfg.scan.r_c_range.1 <= cfg.scan.r_c_range.0 {
        return Err(invalid("scan_rc_max", "must exceed scan_rc_min"));
    }
    if cfg.scan.a_range.1 <= cfg.scan.a_range.0 {
        return Err(invalid("scan_a_max", "must exceed scan_a_min"));
    }
    if cfg.scan.resolution.0 < 2 {
        return Err(invalid("scan_n_rc", "need at least 2"));
    }
    if cfg.scan.resolution.1 < 2 {
        return Err(invalid("scan_n_a", "need at least 2"));
    }
    if cfg.dispersion_samples < 2 {
        return Err(invalid("dispersion_samples", "need at least 2"));
    }
    if !(cfg.peak_threshold > 0.0 && cfg.peak_threshold < 1.0) {
        return Err(invalid("peak_threshold", "must lie strictly inside (0, 1)"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_reference() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg.params, ModelParams::reference());
        assert!((cfg.params.f_e / 0.0856 - 1.0).abs() < 5e-3);
        assert_eq!(cfg.fe_source, FeSource::Given);
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn theta_target_calibrates() {
        let cfg = parse_config("# recalibrate\ntheta_target = 0.3\n").unwrap();
        assert!((cfg.params.f_e / 0.0856 - 1.0).abs() < 5e-3);
        assert_eq!(cfg.fe_source, FeSource::Calibrated { theta_target: 0.3 });
    }

    #[test]
    fn negative_rate_names_key() {
        let err = parse_config("r_b = -1").unwrap_err();
        match err {
            Error::Config { key, .. } => assert_eq!(key, "r_b"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_config("a = 0.3\n\nr_c 0.02\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_config("a = fast").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_config("a = 0.3\na = 0.4").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn unknown_key_is_rejected() {
        let err = parse_config("chemotaxis = 1").unwrap_err();
        assert!(matches!(err, Error::Config { ref key, .. } if key == "chemotaxis"));
    }

    #[test]
    fn f_e_and_theta_are_exclusive() {
        assert!(parse_config("f_e = 0.1\ntheta_target = 0.3").is_err());
    }

    #[test]
    fn infeasible_theta_is_a_config_error() {
        let err = parse_config("theta_target = 0.01").unwrap_err();
        assert!(
            matches!(err, Error::Config { ref key, .. } if key == "theta_target"),
            "{err:?}"
        );
    }

    #[test]
    fn manifest_round_trips() {
        let text = "theta_target = 0.25\nr_c = 0.03\nf_b = 0.003\ninitial = perturbed\nseed = 99\nout_dir = results/run1\nn_points = 512\n";
        let cfg = parse_config(text).unwrap();
        let again = parse_config(&cfg.to_manifest()).unwrap();
        assert_eq!(again.params, cfg.params);
        assert_eq!(again.domain, cfg.domain);
        assert_eq!(again.sim_config(), cfg.sim_config());
        assert_eq!(again.scan, cfg.scan);
        assert_eq!(again.out_dir, cfg.out_dir);
        assert_eq!(
            again
                .to_manifest()
                .lines()
                .filter(|l| !l.starts_with('#'))
                .collect::<Vec<_>>(),
            cfg.to_manifest()
                .lines()
                .filter(|l| !l.starts_with('#'))
                .collect::<Vec<_>>()
        );
    }
}
