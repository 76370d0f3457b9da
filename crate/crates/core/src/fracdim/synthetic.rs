//! Spirals given in closed polar form, used as controls.

use super::curve::SpiralCurve;
use crate::error::{Error, Result};

/// Samples `r = f(φ)` for `φ ∈ [phi0, phi1]` with steps small enough that a
/// chord deviates from a circle of radius `r` by at most `sagitta`.
pub fn polar_curve(f: impl Fn(f64) -> f64, phi0: f64, phi1: f64, sagitta: f64) -> Result<SpiralCurve> {
    if !(phi1 > phi0) || !(sagitta > 0.0) {
        return Err(Error::BadParameter(
            "need phi1 > phi0 and a positive sagitta".into(),
        ));
    }
    let mut phi = Vec::new();
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut p = phi0;
    loop {
        let r = f(p);
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::BadParameter(format!("r({p}) = {r}")));
        }
        phi.push(p);
        x.push(r * p.cos());
        y.push(r * p.sin());
        if p >= phi1 {
            break;
        }
        let step = (8.0 * sagitta / r.max(1e-300)).sqrt().min(0.05);
        p = (p + step).min(phi1);
    }
    Ok(SpiralCurve::spiral(x, y, &phi))
}

/// `r = φ^{−α}` over `windings` turns from `φ = 1`.
pub fn power_spiral(alpha: f64, windings: f64, sagitta: f64) -> Result<SpiralCurve> {
    if !(alpha > 0.0) {
        return Err(Error::BadParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    polar_curve(
        |p| p.powf(-alpha),
        1.0,
        1.0 + std::f64::consts::TAU * windings,
        sagitta,
    )
}

/// `r = 1/ln φ` over `windings` turns from `φ = e`. Its radii decay more
/// slowly than any power, so the spiral has box dimension 2 while the area
/// of its neighbourhoods does not stay comparable to a constant.
pub fn log_spiral_control(windings: f64, sagitta: f64) -> Result<SpiralCurve> {
    let e = std::f64::consts::E;
    polar_curve(|p| 1.0 / p.ln(), e, e + std::f64::consts::TAU * windings, sagitta)
}
