use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flowint::{integrate_with, IntegrateOptions, StopRule, Transversal};
use crate::systems::PlanarSystem;

/// First return to a ray, after the monodromy check.
#[derive(Debug, Clone)]
pub struct ReturnMap<'a> {
    sys: &'a PlanarSystem,
    ray: Transversal,
    opts: IntegrateOptions,
}

impl<'a> ReturnMap<'a> {
    pub fn new(sys: &'a PlanarSystem, ray: Transversal, tol: f64) -> Result<Self> {
        let dirs = sys.characteristic_directions()?;
        if !dirs.is_empty() {
            let angles: Vec<String> = dirs
                .directions
                .iter()
                .map(|d| format!("{:.6}", d.angle))
                .collect();
            return Err(Error::NotMonodromic(format!(
                "characteristic directions at [{}]",
                angles.join(", ")
            )));
        }
        let opts = IntegrateOptions {
            rescaled: sys.prefers_rescaled(),
            bounds: Some((ray.r_min / 10.0, 10.0 * ray.r_max)),
            reverse: Some(false),
            ..IntegrateOptions::with_tol(tol)
        };
        Ok(Self { sys, ray, opts })
    }

    pub fn ray(&self) -> &Transversal {
        &self.ray
    }

    /// Radius of the next crossing in the same direction, starting at
    /// radius `r0` on the ray.
    pub fn apply(&self, r0: f64) -> Result<f64> {
        if !self.ray.contains(r0) {
            return Err(Error::BadParameter(format!(
                "r0 = {r0} outside the transversal ({}, {})",
                self.ray.r_min, self.ray.r_max
            )));
        }
        let (s, c) = self.ray.angle.sin_cos();
        let tr = integrate_with(self.sys, (r0 * c, r0 * s), StopRule::Windings(1.0), &self.opts)?;
        Ok(tr.radius(tr.len() - 1))
    }

    /// `P(r) − r`.
    pub fn displacement(&self, r: f64) -> Result<f64> {
        Ok(self.apply(r)? - r)
    }
}

pub fn return_map(sys: &PlanarSystem, ray: &Transversal, r0: f64, tol: f64) -> Result<f64> {
    ReturnMap::new(sys, *ray, tol)?.apply(r0)
}

/// `(r, P(r))` for each radius, in input order.
pub fn return_map_table(
    sys: &PlanarSystem,
    ray: &Transversal,
    radii: &[f64],
    tol: f64,
) -> Result<Vec<(f64, f64)>> {
    let map = ReturnMap::new(sys, *ray, tol)?;
    radii.par_iter().map(|&r| Ok((r, map.apply(r)?))).collect()
}
