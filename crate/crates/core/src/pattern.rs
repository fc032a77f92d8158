//! Pattern statistics for simulated profiles: peak detection, dominant
//! wavelength, and comparison with the linearly unstable band.

use rustfft::{num_complex::Complex64, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{Domain1D, FieldState};

/// Default relative peak height threshold.
pub const DEFAULT_PEAK_THRESHOLD: f64 = 0.1;

/// A field whose deviation from its mean is below this fraction of its
/// largest value is considered constant.
pub const DEGENERATE_SPECTRUM_TOL: f64 = 1e-14;

/// Below `LOW_VARIANCE_FRACTION · β̄²` a profile is treated as homogeneous.
pub const LOW_VARIANCE_FRACTION: f64 = 1e-6;

/// Minimum number of peaks for a profile to count as patchy.
pub const MIN_PATTERN_PEAKS: usize = 3;

/// Strict local maxima of `beta` higher than `rel_threshold · max(beta)`.
///
/// Returns the count and the positions in metres. A plateau counts once, at its
/// midpoint; end nodes only need to beat their single neighbour.
pub fn detect_peaks(
    s: &FieldState,
    dom: &Domain1D,
    rel_threshold: f64,
) -> Result<(usize, Vec<f64>)> {
    if s.beta.len() != dom.n_points {
        return Err(Error::Domain {
            name: "beta",
            value: s.beta.len() as f64,
            reason: "profile length does not match the grid",
        });
    }
    let positions = peak_positions(&s.beta, dom.dx(), rel_threshold)?;
    Ok((positions.len(), positions))
}

/// [`detect_peaks`] on a bare profile with node spacing `dx`.
pub fn peak_positions(values: &[f64], dx: f64, rel_threshold: f64) -> Result<Vec<f64>> {
    if !(rel_threshold > 0.0 && rel_threshold < 1.0) {
        return Err(Error::Domain {
            name: "rel_threshold",
            value: rel_threshold,
            reason: "must lie strictly inside (0, 1)",
        });
    }
    let n = values.len();
    let Some(max) = values.iter().copied().reduce(f64::max) else {
        return Ok(Vec::new());
    };
    let threshold = rel_threshold * max;
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let level = values[i];
        let mut j = i;
        while j + 1 < n && values[j + 1] == level {
            j += 1;
        }
        let left = i == 0 || values[i - 1] < level;
        let right = j == n - 1 || values[j + 1] < level;
        let bounded = i > 0 || j < n - 1;
        if left && right && bounded && level > threshold {
            out.push(0.5 * (i + j) as f64 * dx);
        }
        i = j + 1;
    }
    Ok(out)
}

/// Squared wavenumber (1/m²) and wavelength (m) of the strongest non-constant
/// cosine mode of `beta`.
///
/// The mean-free profile is evenly reflected about both ends before the FFT,
/// so the basis is the Neumann cosine modes `cos(kπx/L)`, `k = 1..n-1`.
pub fn dominant_wavelength(s: &FieldState, dom: &Domain1D) -> Result<(f64, f64)> {
    dom.validate()?;
    if s.beta.len() != dom.n_points {
        return Err(Error::Domain {
            name: "beta",
            value: s.beta.len() as f64,
            reason: "profile length does not match the grid",
        });
    }
    let k = dominant_mode(&s.beta)?;
    let xi = std::f64::consts::PI * k as f64 / dom.length;
    Ok((xi * xi, 2.0 * dom.length / k as f64))
}

/// Index `k ∈ 1..n` of the largest cosine-mode amplitude.
pub fn dominant_mode(values: &[f64]) -> Result<usize> {
    let n = values.len();
    if n < 2 {
        return Err(Error::DegenerateSpectrum(DEGENERATE_SPECTRUM_TOL));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let spread = values.iter().fold(0.0_f64, |m, v| m.max((v - mean).abs()));
    if peak == 0.0 || spread <= DEGENERATE_SPECTRUM_TOL * peak {
        return Err(Error::DegenerateSpectrum(DEGENERATE_SPECTRUM_TOL));
    }

    let m = 2 * (n - 1);
    let mut buf: Vec<Complex64> = (0..m)
        .map(|i| {
            let src = if i < n { i } else { m - i };
            Complex64::new(values[src] - mean, 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);

    let mut best = 1;
    let mut best_mag = f64::NEG_INFINITY;
    for (k, c) in buf.iter().enumerate().take(n).skip(1) {
        let mag = c.norm_sqr();
        if mag > best_mag {
            best_mag = mag;
            best = k;
        }
    }
    Ok(best)
}

/// Population variance.
pub fn spatial_variance(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n
}

/// Summary of one simulated bacterial profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternReport {
    pub peak_count: usize,
    #[serde(skip)]
    pub peak_positions: Vec<f64>,
    /// `None` when the profile is constant.
    pub dominant_xi2: Option<f64>,
    #[serde(rename = "dominant_wavelength_m")]
    pub dominant_wavelength: Option<f64>,
    /// `None` when the band check is skipped (near-homogeneous profile or no spectrum).
    pub in_predicted_band: Option<bool>,
    /// (units/m³)²
    pub spatial_variance: f64,
    #[serde(skip)]
    pub low_variance: bool,
}

impl PatternReport {
    /// `band` is the linearly unstable interval `(Λ₋, Λ₊)` if any; `beta_bar`
    /// sets the scale of the low-variance cut-off.
    pub fn analyze(
        s: &FieldState,
        dom: &Domain1D,
        band: Option<(f64, f64)>,
        beta_bar: f64,
        rel_threshold: f64,
    ) -> Result<Self> {
        let (peak_count, peak_positions) = detect_peaks(s, dom, rel_threshold)?;
        let spatial_variance = spatial_variance(&s.beta);
        let low_variance = spatial_variance < LOW_VARIANCE_FRACTION * beta_bar * beta_bar;
        let dominant = match dominant_wavelength(s, dom) {
            Ok(d) => Some(d),
            Err(Error::DegenerateSpectrum(_)) => None,
            Err(e) => return Err(e),
        };
        let in_predicted_band = match (low_variance, dominant) {
            (false, Some((xi2, _))) => Some(band.is_some_and(|(lo, hi)| lo < xi2 && xi2 < hi)),
            _ => None,
        };
        Ok(Self {
            peak_count,
            peak_positions,
            dominant_xi2: dominant.map(|d| d.0),
            dominant_wavelength: dominant.map(|d| d.1),
            in_predicted_band,
            spatial_variance,
            low_variance,
        })
    }

    /// At least [`MIN_PATTERN_PEAKS`] spots on a non-homogeneous profile.
    pub fn is_patterned(&self) -> bool {
        !self.low_variance && self.peak_count >= MIN_PATTERN_PEAKS
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `# key = value` lines, suitable for trailing a CSV file.
    pub fn to_comment_block(&self) -> String {
        fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
            v.map_or_else(|| "none".to_owned(), |v| v.to_string())
        }
        format!(
            "# peak_count = {}\n# dominant_xi2 = {}\n# dominant_wavelength_m = {}\n# in_predicted_band = {}\n# spatial_variance = {:e}\n",
            self.peak_count,
            opt(self.dominant_xi2.map(|v| format!("{v:e}"))),
            opt(self.dominant_wavelength.map(|v| format!("{v:e}"))),
            opt(self.in_predicted_band),
            self.spatial_variance,
        )
    }
}
