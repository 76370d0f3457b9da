use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{find_limit_cycles_with, CycleSearch, LimitCycleReport};
use crate::error::{Error, Result};
use crate::flowint::Transversal;
use crate::fracdim::{linear_fit, LinearFit};
use crate::systems::{make_deg_nn, Orientation};

/// One `λ` of a sweep. Exactly one of `report` and `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfPoint {
    pub lambda: f64,
    /// `(−λ)^{1/(2k)}` for `n = 1` and `λ < 0`.
    pub predicted_r: Option<f64>,
    pub report: Option<LimitCycleReport>,
    pub error: Option<String>,
}

/// Cycle search on `ray` for `deg_nn(k, n, −, λ)` at each `λ`. A failure
/// at one `λ` is recorded and the sweep continues.
pub fn hopf_sweep(
    k: u32,
    n: u32,
    lambdas: &[f64],
    ray: &Transversal,
    grid: usize,
    search: &CycleSearch,
) -> Result<Vec<HopfPoint>> {
    if lambdas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::BadParameter("lambdas must be strictly increasing".into()));
    }
    make_deg_nn(k, n, Orientation::Attracting, 0.0)?;
    Ok(lambdas
        .par_iter()
        .map(|&lambda| {
            let predicted_r = (n == 1 && lambda < 0.0).then(|| (-lambda).powf(1.0 / (2 * k) as f64));
            let run = make_deg_nn(k, n, Orientation::Attracting, lambda)
                .and_then(|sys| find_limit_cycles_with(&sys, ray, grid, search));
            let (report, error) = match run {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            HopfPoint {
                lambda,
                predicted_r,
                report,
                error,
            }
        })
        .collect())
}

/// Slope of `log r*` against `log(−λ)` over the points with `λ < 0` and
/// exactly one cycle.
pub fn hopf_exponent(points: &[HopfPoint]) -> Result<LinearFit> {
    let (x, y): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|p| p.lambda < 0.0)
        .filter_map(|p| match &p.report {
            Some(r) if r.cycles.len() == 1 => Some(((-p.lambda).ln(), r.cycles[0].r.ln())),
            _ => None,
        })
        .unzip();
    if x.len() < 2 {
        return Err(Error::BadParameter(
            "need two sweep points with a single cycle".into(),
        ));
    }
    Ok(linear_fit(&x, &y))
}
