use thiserror::Error;

/// Which species a field-level diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    Bacteria,
    Phagocytes,
}

impl std::fmt::Display for Species {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Species::Bacteria => f.write_str("beta"),
            Species::Phagocytes => f.write_str("gamma"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or input value is outside its admissible domain.
    #[error("invalid value for `{name}`: {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The porosity coefficient that balances the equilibrium would be non-positive.
    #[error("infeasible calibration: f_e = {f_e:e} <= 0 at theta = {theta}")]
    InfeasibleCalibration { f_e: f64, theta: f64 },

    /// Two independent routes to the same quantity disagree; always a bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    /// The discrete field left the invariant region (non-negativity, carrying capacity, finiteness).
    #[error(
        "invariant violation at t = {time} min, node {node}: {species} = {value:e} ({reason})"
    )]
    InvariantViolation {
        time: f64,
        node: usize,
        species: Species,
        value: f64,
        reason: &'static str,
    },

    #[error("time step {dt} min exceeds the explicit reaction bound {max_dt} min")]
    TimeStepTooLarge { dt: f64, max_dt: f64 },

    #[error("degenerate spectrum: field is constant to relative tolerance {0:e}")]
    DegenerateSpectrum(f64),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejects non-finite or non-positive values.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        Err(Error::Domain {
            name,
            value,
            reason: "must be finite",
        })
    } else if value <= 0.0 {
        Err(Error::Domain {
            name,
            value,
            reason: "must be strictly positive",
        })
    } else {
        Ok(value)
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        Err(Error::Domain {
            name,
            value,
            reason: "must be finite",
        })
    } else if value < 0.0 {
        Err(Error::Domain {
            name,
            value,
            reason: "must be non-negative",
        })
    } else {
        Ok(value)
    }
}
