//! End-to-end dimension measurement of one trajectory.

use serde::{Deserialize, Serialize};

use super::estimate::{estimate_dimension_with, fit_power_spiral, sequence_dimension, EstimateOptions};
use super::formulas::{bound_theorem3, formula_prop, formula_theorem1};
use super::{DimensionEstimate, EpsGrid, Method, PowerSpiralModel, SpiralCurve};
use crate::error::{Error, Result};
use crate::flowint::{
    crossings, integrate_with, IntegrateOptions, PoincareOrbit, StopRule, Trajectory, Transversal,
};
use crate::systems::{Family, PlanarSystem};

/// What the measured dimension is compared with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub value: f64,
    /// Where the value comes from, e.g. "Theorem 1".
    pub source: String,
    /// True when `value` is only a lower bound.
    pub lower_bound: bool,
}

/// Closed-form dimension for the built-in families (`None` for the annulus,
/// custom systems and `λ ≠ 0`).
pub fn reference_dimension(sys: &PlanarSystem) -> Option<Reference> {
    let p = &sys.params;
    let exact = |value: f64, source: &str| Reference {
        value,
        source: source.to_string(),
        lower_bound: false,
    };
    match sys.family {
        Family::WeakFocus => Some(exact(formula_theorem1(p.k?, 1).ok()?, "Theorem 1 (n = 1)")),
        Family::DegNn => Some(exact(formula_theorem1(p.k?, p.n?).ok()?, "Theorem 1")),
        Family::Homogeneous => Some(exact(formula_prop(p.k?, p.s?).ok()?, "Proposition 1")),
        Family::DegMn => Some(Reference {
            value: bound_theorem3(p.k?, p.m?, p.n?).ok()?,
            source: "Theorem 3".into(),
            lower_bound: true,
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureConfig {
    pub start: (f64, f64),
    pub windings: f64,
    pub tol: f64,
    pub method: Method,
    /// Integrate the unit-speed field.
    pub rescaled: bool,
    /// Chord sagitta of the final trajectory relative to the smallest scale.
    pub sagitta_ratio: f64,
    /// Dimension for the content band; the reference value when `None`,
    /// falling back to the fitted one.
    pub d_ref: Option<f64>,
    /// Also compute neighbourhood areas for the content band.
    pub profile: bool,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        Self {
            start: (1.0, 0.0),
            windings: 200.0,
            tol: 1e-10,
            method: Method::BoxCount,
            rescaled: true,
            sagitta_ratio: 1.0 / 16.0,
            d_ref: None,
            profile: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Measurement {
    pub trajectory: Trajectory,
    pub estimate: DimensionEstimate,
    pub reference: Option<Reference>,
}

impl Measurement {
    /// Crossings of the ray through the start point.
    pub fn orbit(&self) -> Result<PoincareOrbit> {
        let (x, y) = (self.trajectory.x[0], self.trajectory.y[0]);
        crossings(&self.trajectory, &Transversal::ray(y.atan2(x)))
    }

    pub fn power_fit(&self) -> Result<PowerSpiralModel> {
        fit_power_spiral(&self.trajectory)
    }

    /// Box dimension of the orbit on the start ray.
    pub fn orbit_dimension(&self) -> Result<DimensionEstimate> {
        sequence_dimension(&self.orbit()?.radii)
    }
}

/// Integrates `cfg.windings` turns from `cfg.start`, picks the fit window
/// from the ray crossings, re-integrates finely enough for its smallest
/// scale and fits the dimension.
pub fn measure_dimension(sys: &PlanarSystem, cfg: &MeasureConfig) -> Result<Measurement> {
    if !(cfg.windings > 0.0) {
        return Err(Error::BadParameter(format!(
            "windings must be positive, got {}",
            cfg.windings
        )));
    }
    let stop = StopRule::Windings(cfg.windings);
    let coarse_opts = IntegrateOptions {
        rescaled: cfg.rescaled,
        ..IntegrateOptions::with_tol(cfg.tol)
    };
    let coarse = integrate_with(sys, cfg.start, stop.clone(), &coarse_opts)?;
    let grid = EpsGrid::for_curve(&SpiralCurve::from_trajectory(&coarse))?;
    let fine_opts = IntegrateOptions {
        max_sagitta: Some(grid.lo() * cfg.sagitta_ratio),
        ..coarse_opts
    };
    let trajectory = integrate_with(sys, cfg.start, stop, &fine_opts)?;
    let curve = SpiralCurve::from_trajectory(&trajectory);
    let grid = EpsGrid::for_curve(&curve)?;
    let reference = reference_dimension(sys);
    let opts = EstimateOptions {
        d_ref: cfg.d_ref.or(reference.as_ref().map(|r| r.value)),
        profile: cfg.profile,
    };
    let estimate = estimate_dimension_with(&curve, &grid, cfg.method, &opts)?;
    Ok(Measurement {
        trajectory,
        estimate,
        reference,
    })
}
