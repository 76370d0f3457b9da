use rayon::prelude::*;

use super::{Cycle, CycleSearch, LimitCycleReport, ReturnMap, Stability, BRACKET_WIDTH};
use crate::error::{Error, Result};
use crate::flowint::Transversal;
use crate::systems::PlanarSystem;

/// Fixed points of the return map on `ray`, found from sign changes of
/// `D(r) = P(r) − r` on `grid` geometric radii in `(r_min, r_max)`.
pub fn find_limit_cycles(sys: &PlanarSystem, ray: &Transversal, grid: usize) -> Result<LimitCycleReport> {
    find_limit_cycles_with(sys, ray, grid, &CycleSearch::default())
}

pub fn find_limit_cycles_with(
    sys: &PlanarSystem,
    ray: &Transversal,
    grid: usize,
    search: &CycleSearch,
) -> Result<LimitCycleReport> {
    if grid < 16 {
        return Err(Error::BadParameter(format!(
            "grid must be at least 16, got {grid}"
        )));
    }
    if !(ray.r_min > 0.0 && ray.r_max.is_finite()) {
        return Err(Error::BadParameter(
            "cycle search needs a bounded transversal".into(),
        ));
    }
    let map = ReturnMap::new(sys, *ray, search.tol)?;
    // Keep the grid strictly inside the open window.
    let (lo, hi) = (ray.r_min * (1.0 + 1e-9), ray.r_max * (1.0 - 1e-9));
    let q = (hi / lo).ln() / (grid - 1) as f64;
    let radii: Vec<f64> = (0..grid).map(|i| lo * (q * i as f64).exp()).collect();
    let samples: Vec<(f64, f64)> = radii
        .par_iter()
        .map(|&r| Ok((r, map.displacement(r)?)))
        .collect::<Result<_>>()?;

    let mut report = LimitCycleReport {
        ray_angle: ray.angle,
        window: (ray.r_min, ray.r_max),
        lambda: sys.params.lambda,
        cycles: Vec::new(),
        bracket_width: 0.0,
        continuum_of_cycles: false,
        samples,
    };
    let flat = search.continuum_factor * search.tol;
    if report.samples.iter().all(|s| s.1.abs() < flat) {
        report.continuum_of_cycles = true;
        return Ok(report);
    }

    let brackets: Vec<(f64, f64, f64)> = report
        .samples
        .windows(2)
        .filter(|w| w[0].1 > 0.0 && w[1].1 <= 0.0 || w[0].1 < 0.0 && w[1].1 >= 0.0)
        .map(|w| (w[0].0, w[1].0, w[0].1))
        .collect();
    let refined: Vec<(Cycle, f64)> = brackets
        .par_iter()
        .map(|&(a, b, da)| refine(&map, a, b, da))
        .collect::<Result<_>>()?;
    for (cycle, width) in refined {
        report.bracket_width = report.bracket_width.max(width);
        report.cycles.push(cycle);
    }
    Ok(report)
}

/// Bisection on `[a, b]`, where `D(a)` has sign `da` and `D(b)` the other.
fn refine(map: &ReturnMap<'_>, mut a: f64, mut b: f64, da: f64) -> Result<(Cycle, f64)> {
    let positive_below = da > 0.0;
    while b - a >= BRACKET_WIDTH {
        let m = 0.5 * (a + b);
        let dm = map.displacement(m)?;
        if dm == 0.0 {
            a = m;
            b = m;
            break;
        }
        if (dm > 0.0) == positive_below {
            a = m;
        } else {
            b = m;
        }
    }
    let r = 0.5 * (a + b);
    let residual = map.displacement(r)?.abs();
    let stability = if positive_below {
        Stability::Attracting
    } else {
        Stability::Repelling
    };
    Ok((
        Cycle {
            r,
            stability,
            residual,
        },
        b - a,
    ))
}
