use rayon::prelude::*;

use super::area::area_with_core;
use super::boxcount::averaged_count;
use super::curve::SpiralCurve;
use super::regress::linear_fit;
use super::{
    band, DimensionEstimate, EpsGrid, EpsNeighborhoodProfile, Method, PowerSpiralModel, ProfileSample,
    ScaleSample, MIN_DECADES, POOR_FIT_R2,
};
use crate::error::{Error, Result};
use crate::flowint::{crossings, Trajectory, Transversal};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EstimateOptions {
    /// Dimension for the content band; the fitted value when `None`.
    pub d_ref: Option<f64>,
    /// Also compute areas (and the band) for box counting.
    pub profile: bool,
}

/// Fit window from radial gaps listed outermost first: from the median of
/// the five innermost gaps up to a quarter of the outermost one.
pub fn window_from_gaps(gaps: &[f64]) -> Result<(f64, f64)> {
    if gaps.len() < 6 {
        return Err(Error::BadWindow(format!(
            "need at least 6 gaps, got {}",
            gaps.len()
        )));
    }
    let mut inner: Vec<f64> = gaps[gaps.len() - 5..].to_vec();
    inner.sort_by(f64::total_cmp);
    let lo = inner[2];
    let hi = gaps[0] / 4.0;
    if !(lo > 0.0) || hi / lo < 10f64.powf(MIN_DECADES) {
        return Err(Error::BadWindow(format!(
            "window [{lo:e}, {hi:e}] spans less than {MIN_DECADES} decades; run more windings"
        )));
    }
    Ok((lo, hi))
}

fn gaps(seq: &[f64]) -> Vec<f64> {
    seq.windows(2).map(|w| (w[0] - w[1]).abs()).collect()
}

impl EpsGrid {
    /// Window from the crossings of the ray through the curve's first point.
    pub fn for_curve(curve: &SpiralCurve) -> Result<Self> {
        if !curve.is_spiral() {
            return Err(Error::BadWindow("a plain polyline needs an explicit grid".into()));
        }
        let start = curve.point(0);
        let mut radii = vec![start.0.hypot(start.1)];
        radii.extend_from_slice(curve.start_ray_radii());
        let (lo, hi) = window_from_gaps(&gaps(&radii))?;
        Self::for_window(lo, hi)
    }

    /// Window from the gaps of a sequence decreasing to 0.
    pub fn for_sequence(seq: &[f64]) -> Result<Self> {
        let mut s = seq.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        let (lo, hi) = window_from_gaps(&gaps(&s))?;
        Self::for_window(lo, hi)
    }
}

pub fn estimate_dimension(curve: &SpiralCurve, grid: &EpsGrid, method: Method) -> Result<DimensionEstimate> {
    estimate_dimension_with(
        curve,
        grid,
        method,
        &EstimateOptions {
            d_ref: None,
            profile: true,
        },
    )
}

/// Box-counting (`log N` against `log 1/eps`) or Minkowski (`log A`
/// against `log eps`) slope over `grid`.
pub fn estimate_dimension_with(
    curve: &SpiralCurve,
    grid: &EpsGrid,
    method: Method,
    opts: &EstimateOptions,
) -> Result<DimensionEstimate> {
    if method == Method::SequenceBoxCount {
        return Err(Error::BadParameter(
            "sequence_box_count applies to crossing sequences, not curves".into(),
        ));
    }
    if curve.is_empty() {
        return Err(Error::BadParameter("empty polyline".into()));
    }
    let sag = curve.sagitta_estimate();
    let eps_min = grid.lo();
    if sag > eps_min / 4.0 {
        let factor = (sag / (eps_min / 4.0)).sqrt();
        return Err(Error::TooSparse {
            eps: eps_min,
            needed: (curve.len() as f64 * factor).ceil() as usize,
        });
    }
    let want_count = method == Method::BoxCount;
    let want_area = method == Method::MinkowskiSlope || opts.profile;
    let samples: Vec<ScaleSample> = grid
        .values()
        .par_iter()
        .map(|&eps| ScaleSample {
            eps,
            count: want_count.then(|| averaged_count(curve, eps)),
            area: want_area.then(|| area_with_core(curve, eps)),
        })
        .collect();

    let (d_hat, fit) = match method {
        Method::BoxCount => {
            let x: Vec<f64> = samples.iter().map(|s| -s.eps.ln()).collect();
            let y: Vec<f64> = samples.iter().map(|s| s.count.unwrap().ln()).collect();
            let f = linear_fit(&x, &y);
            (f.slope, f)
        }
        _ => {
            let x: Vec<f64> = samples.iter().map(|s| s.eps.ln()).collect();
            let y: Vec<f64> = samples.iter().map(|s| s.area.unwrap().ln()).collect();
            let f = linear_fit(&x, &y);
            (2.0 - f.slope, f)
        }
    };
    let d_ref = opts.d_ref.unwrap_or(d_hat);
    let nondegenerate_band =
        want_area.then(|| band(samples.iter().map(|s| s.area.unwrap() / s.eps.powf(2.0 - d_ref))));
    Ok(DimensionEstimate {
        d_hat,
        stderr: fit.stderr,
        fit_window: (grid.lo(), grid.hi()),
        r_squared: fit.r_squared,
        method,
        nondegenerate_band,
        d_ref: want_area.then_some(d_ref),
        poor_fit: fit.r_squared < POOR_FIT_R2,
        samples,
    })
}

/// Areas of the neighbourhoods over `grid` and their content ratios at
/// dimension `d_ref`.
pub fn eps_profile(curve: &SpiralCurve, grid: &EpsGrid, d_ref: f64) -> EpsNeighborhoodProfile {
    let samples = grid
        .values()
        .par_iter()
        .map(|&eps| {
            let area = area_with_core(curve, eps);
            ProfileSample {
                eps,
                area,
                content_ratio: area / eps.powf(2.0 - d_ref),
            }
        })
        .collect();
    EpsNeighborhoodProfile { d_ref, samples }
}

pub fn sequence_dimension(seq: &[f64]) -> Result<DimensionEstimate> {
    let grid = EpsGrid::for_sequence(seq)?;
    sequence_dimension_with(seq, &grid, None)
}

/// Box dimension of `{r_j} ∪ {0}` on the line, with `[0, min r_j]` filled
/// in as the accumulation of the unseen tail.
pub fn sequence_dimension_with(seq: &[f64], grid: &EpsGrid, d_ref: Option<f64>) -> Result<DimensionEstimate> {
    if seq.len() < 2 || seq.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(Error::BadParameter(
            "need at least two finite non-negative terms".into(),
        ));
    }
    let mut s = seq.to_vec();
    s.sort_by(f64::total_cmp);
    let samples: Vec<ScaleSample> = grid
        .values()
        .iter()
        .map(|&eps| ScaleSample {
            eps,
            count: Some(0.5 * (line_count(&s, eps, 0.0) + line_count(&s, eps, 0.5 * eps)) as f64),
            area: Some(line_cover(&s, eps)),
        })
        .collect();
    let x: Vec<f64> = samples.iter().map(|p| -p.eps.ln()).collect();
    let y: Vec<f64> = samples.iter().map(|p| p.count.unwrap().ln()).collect();
    let f = linear_fit(&x, &y);
    let d_ref = d_ref.unwrap_or(f.slope);
    let b = band(samples.iter().map(|p| p.area.unwrap() / p.eps.powf(1.0 - d_ref)));
    Ok(DimensionEstimate {
        d_hat: f.slope,
        stderr: f.stderr,
        fit_window: (grid.lo(), grid.hi()),
        r_squared: f.r_squared,
        method: Method::SequenceBoxCount,
        nondegenerate_band: Some(b),
        d_ref: Some(d_ref),
        poor_fit: f.r_squared < POOR_FIT_R2,
        samples,
    })
}

/// Cells `[k·eps + a, (k+1)·eps + a)` met by `[0, s[0]] ∪ s` (`s` ascending).
fn line_count(s: &[f64], eps: f64, a: f64) -> u64 {
    let cell = |v: f64| ((v - a) / eps).floor() as i64;
    let mut last = cell(s[0]);
    let mut n = (last - cell(0.0) + 1) as u64;
    for &v in &s[1..] {
        let c = cell(v);
        if c != last {
            n += 1;
            last = c;
        }
    }
    n
}

/// Length of the `eps`-neighbourhood of `[0, s[0]] ∪ s` (`s` ascending).
fn line_cover(s: &[f64], eps: f64) -> f64 {
    let mut total = 0.0;
    let (mut lo, mut hi) = (-eps, s[0] + eps);
    for &v in &s[1..] {
        if v - eps > hi {
            total += hi - lo;
            lo = v - eps;
        }
        hi = v + eps;
    }
    total + hi - lo
}

/// Least-squares `ln r = ln A − α ln Φ` over the points with
/// `Φ ≥ Φ_max/10`.
pub fn fit_power_law(phi: &[f64], r: &[f64]) -> Result<PowerSpiralModel> {
    assert_eq!(phi.len(), r.len());
    let phi_max = phi.iter().cloned().fold(0.0, f64::max);
    let (x, y): (Vec<f64>, Vec<f64>) = phi
        .iter()
        .zip(r)
        .filter(|(p, r)| **p >= phi_max / 10.0 && **p > 0.0 && **r > 0.0)
        .map(|(p, r)| (p.ln(), r.ln()))
        .unzip();
    if x.len() < 10 {
        return Err(Error::BadWindow(format!(
            "need at least 10 crossings in the last decade of angle, got {}",
            x.len()
        )));
    }
    let f = linear_fit(&x, &y);
    let alpha = -f.slope;
    let amplitude_band = band(x.iter().zip(&y).map(|(lp, lr)| (lr + alpha * lp).exp()));
    Ok(PowerSpiralModel {
        alpha,
        stderr: f.stderr,
        amplitude_band,
        r_squared: f.r_squared,
        poor_fit: f.r_squared < POOR_FIT_R2,
        crossings_used: x.len(),
    })
}

/// Fits `r ≈ A·Φ^{−α}` to the crossings of the ray through the start point.
pub fn fit_power_spiral(traj: &Trajectory) -> Result<PowerSpiralModel> {
    let (x0, y0) = (traj.x[0], traj.y[0]);
    let orb = crossings(traj, &Transversal::ray(y0.atan2(x0)))?;
    let phi: Vec<f64> = orb.windings.iter().map(|w| w.abs()).collect();
    fit_power_law(&phi, &orb.radii)
}
