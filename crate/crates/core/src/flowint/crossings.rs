use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::rk::{dp_step, CompiledField};
use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::systems::{Family, Params};

const ANGLE_TOL: f64 = 1e-12;

/// Ray `φ = angle` from the origin, active for `r_min < r < r_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transversal {
    pub angle: f64,
    pub r_min: f64,
    pub r_max: f64,
}

impl Transversal {
    pub fn new(angle: f64, r_min: f64, r_max: f64) -> Result<Self> {
        if !(r_min > 0.0 && r_min < r_max) {
            return Err(Error::BadParameter(format!(
                "transversal needs 0 < r_min < r_max (got {r_min}, {r_max})"
            )));
        }
        Ok(Self {
            angle: angle.rem_euclid(TAU),
            r_min,
            r_max,
        })
    }

    /// The whole ray.
    pub fn ray(angle: f64) -> Self {
        Self {
            angle: angle.rem_euclid(TAU),
            r_min: f64::MIN_POSITIVE,
            r_max: f64::INFINITY,
        }
    }

    pub fn contains(&self, r: f64) -> bool {
        r > self.r_min && r < self.r_max
    }
}

/// Successive same-direction crossings of a ray.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoincareOrbit {
    pub ray_angle: f64,
    pub radii: Vec<f64>,
    /// Unwrapped angle of each crossing, measured from the start point's
    /// angle (so `|Φ| ≈ 2πj` when the start lies on the ray).
    pub windings: Vec<f64>,
    pub family: Family,
    pub params: Params,
}

impl PoincareOrbit {
    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.radii.windows(2).all(|w| w[1] < w[0])
    }
}

/// Finds `θ ∈ (0, 1]` such that the Dormand–Prince step of size `θh` from
/// `y0` lands on unwrapped angle `target`, by bisection to `1e-12` in
/// angle. `phi0` is the unwrapped angle of `y0`; the step is assumed to
/// turn by less than π.
pub(crate) fn localize_angle(
    field: &CompiledField,
    y0: [f64; 2],
    f0: [f64; 2],
    h: f64,
    phi0: f64,
    target: f64,
) -> Result<(f64, [f64; 2])> {
    let eval = |theta: f64| -> Result<([f64; 2], f64)> {
        let p = dp_step(field, y0, f0, theta * h)
            .ok_or(Error::SingularField { x: y0[0], y: y0[1] })?
            .y;
        let d = (y0[0] * p[1] - y0[1] * p[0]).atan2(y0[0] * p[0] + y0[1] * p[1]);
        Ok((p, phi0 + d))
    };
    let dir = if target >= phi0 { 1.0 } else { -1.0 };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let (mut p_hi, mut a_hi) = eval(1.0)?;
    let mut a_lo = phi0;
    for _ in 0..200 {
        if (a_hi - a_lo).abs() <= ANGLE_TOL || hi - lo <= f64::EPSILON {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (p, a) = eval(mid)?;
        if dir * (a - target) >= 0.0 {
            hi = mid;
            p_hi = p;
            a_hi = a;
        } else {
            lo = mid;
            a_lo = a;
        }
    }
    Ok((hi, p_hi))
}

/// Radii of successive crossings of `ray` in the sense of rotation,
/// localised by bisection on the step map.
pub fn crossings(traj: &Trajectory, ray: &Transversal) -> Result<PoincareOrbit> {
    let n = traj.len();
    if n < 2 {
        return Err(Error::NoCrossings);
    }
    let phi_start = traj.phi[0];
    let dir = if traj.phi[n - 1] >= phi_start { 1.0 } else { -1.0 };
    // First ray level strictly beyond the start in the direction of travel.
    let base = ray.angle;
    let mut j = if dir > 0.0 {
        ((phi_start - base) / TAU).floor() + 1.0
    } else {
        ((phi_start - base) / TAU).ceil() - 1.0
    };
    let field = traj.field();
    let mut radii = Vec::new();
    let mut windings = Vec::new();
    for i in 0..n - 1 {
        let (a, b) = (traj.phi[i], traj.phi[i + 1]);
        loop {
            let level = base + j * TAU;
            let passed = if dir > 0.0 { b >= level } else { b <= level };
            if !passed {
                break;
            }
            let (y0, f0) = traj.state(i);
            let h = traj.t[i + 1] - traj.t[i];
            let beyond_start = if dir > 0.0 { level > a } else { level < a };
            let r = if beyond_start {
                let (_, p) = localize_angle(&field, y0, f0, h, a, level)?;
                p[0].hypot(p[1])
            } else {
                traj.radius(i)
            };
            if ray.contains(r) {
                radii.push(r);
                windings.push(level - phi_start);
            }
            j += dir;
        }
    }
    if radii.is_empty() {
        return Err(Error::NoCrossings);
    }
    Ok(PoincareOrbit {
        ray_angle: ray.angle,
        radii,
        windings,
        family: traj.system().family,
        params: traj.system().params.clone(),
    })
}
