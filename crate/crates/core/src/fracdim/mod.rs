//! Box-counting and Minkowski estimates of spiral dimensions.

mod area;
mod boxcount;
mod curve;
mod estimate;
pub mod formulas;
mod measure;
mod regress;
pub mod synthetic;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use area::eps_area;
pub use boxcount::box_count;
pub use curve::SpiralCurve;
pub use estimate::{
    eps_profile, estimate_dimension, estimate_dimension_with, fit_power_law, fit_power_spiral,
    sequence_dimension, sequence_dimension_with, window_from_gaps, EstimateOptions,
};
pub use formulas::{
    alpha_prop, alpha_theorem1, bound_theorem3, formula_prop, formula_theorem1, sequence_dimension_formula,
    spiral_dimension,
};
pub use measure::{measure_dimension, reference_dimension, MeasureConfig, Measurement, Reference};
pub use regress::{linear_fit, LinearFit};

/// Fits with `r²` below this are flagged.
pub const POOR_FIT_R2: f64 = 0.98;
/// Minimum number of scales in a fit.
pub const MIN_SCALES: usize = 12;
/// Minimum width of a fit window, in decades.
pub const MIN_DECADES: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BoxCount,
    MinkowskiSlope,
    SequenceBoxCount,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BoxCount => "box_count",
            Method::MinkowskiSlope => "minkowski_slope",
            Method::SequenceBoxCount => "sequence_box_count",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Method::BoxCount, Method::MinkowskiSlope, Method::SequenceBoxCount]
            .into_iter()
            .find(|m| m.name() == s)
    }
}

/// Decreasing list of scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsGrid {
    eps: Vec<f64>,
}

impl EpsGrid {
    /// `count` scales spaced geometrically from `hi` down to `lo`.
    pub fn geometric(hi: f64, lo: f64, count: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) || count < 2 {
            return Err(Error::BadWindow(format!(
                "need 0 < lo < hi and two scales (lo={lo:e}, hi={hi:e}, count={count})"
            )));
        }
        let q = (lo / hi).ln() / (count - 1) as f64;
        let eps = (0..count).map(|i| hi * (q * i as f64).exp()).collect();
        Ok(Self { eps })
    }

    /// A geometric grid over `[lo, hi]` with at least [`MIN_SCALES`] points
    /// and six per decade.
    pub fn for_window(lo: f64, hi: f64) -> Result<Self> {
        let decades = (hi / lo).log10();
        let count = MIN_SCALES.max((6.0 * decades).round() as usize + 1);
        Self::geometric(hi, lo, count)
    }

    pub fn from_values(mut eps: Vec<f64>) -> Result<Self> {
        if eps.len() < 2 || eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return Err(Error::BadWindow("need at least two positive scales".into()));
        }
        eps.sort_by(|a, b| b.total_cmp(a));
        eps.dedup();
        if eps.len() < 2 {
            return Err(Error::BadWindow("need at least two distinct scales".into()));
        }
        Ok(Self { eps })
    }

    pub fn values(&self) -> &[f64] {
        &self.eps
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn hi(&self) -> f64 {
        self.eps[0]
    }

    pub fn lo(&self) -> f64 {
        self.eps[self.eps.len() - 1]
    }

    pub fn decades(&self) -> f64 {
        (self.hi() / self.lo()).log10()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleSample {
    pub eps: f64,
    /// Mean box count over the two grid anchors.
    pub count: Option<f64>,
    /// Neighbourhood area (length for sequences).
    pub area: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub d_hat: f64,
    pub stderr: f64,
    /// `(eps_lo, eps_hi)`.
    pub fit_window: (f64, f64),
    pub r_squared: f64,
    pub method: Method,
    /// `(min, max)` of `area / eps^{N − d_ref}` over the window.
    pub nondegenerate_band: Option<(f64, f64)>,
    /// Dimension at which the band was evaluated.
    pub d_ref: Option<f64>,
    pub poor_fit: bool,
    pub samples: Vec<ScaleSample>,
}

impl DimensionEstimate {
    /// `max/min` of the band.
    pub fn band_ratio(&self) -> Option<f64> {
        self.nondegenerate_band.map(|(lo, hi)| hi / lo)
    }

    /// Samples as CSV (`eps,count,area`).
    pub fn samples_csv(&self) -> String {
        let mut s = String::from("eps,count,area\n");
        let f = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.12e}"));
        for p in &self.samples {
            s.push_str(&format!("{:.12e},{},{}\n", p.eps, f(p.count), f(p.area)));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub eps: f64,
    pub area: f64,
    /// `area / eps^{2 − d_ref}`.
    pub content_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsNeighborhoodProfile {
    pub d_ref: f64,
    pub samples: Vec<ProfileSample>,
}

impl EpsNeighborhoodProfile {
    pub fn band(&self) -> (f64, f64) {
        band(self.samples.iter().map(|s| s.content_ratio))
    }
}

fn band(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// `r_j ≈ A·Φ_j^{−α}` fitted on crossings of a fixed ray.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSpiralModel {
    pub alpha: f64,
    pub stderr: f64,
    /// `(min, max)` of `r_j Φ_j^α` over the crossings used.
    pub amplitude_band: (f64, f64),
    pub r_squared: f64,
    pub poor_fit: bool,
    pub crossings_used: usize,
}
