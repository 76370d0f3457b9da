use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::trajectory::Trajectory;
use crate::systems::{PlanarSystem, QuadrantMap};

/// Image of a trajectory under `F`, keeping the integration parameter.
pub fn pushforward(traj: &Trajectory, f: &QuadrantMap) -> Vec<(f64, f64, f64)> {
    (0..traj.len())
        .map(|i| {
            let (x, y) = f.forward((traj.x[i], traj.y[i]));
            (traj.t[i], x, y)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelismReport {
    /// Largest `|X₁V₂ − X₂V₁| / (‖X‖‖V‖)` over the points used.
    pub max_residual: f64,
    pub mean_residual: f64,
    pub used: usize,
    /// Points within the angular exclusion of an axis (or at the ends).
    pub excluded: usize,
}

/// Compares the finite-difference tangent of a parametrised polyline with
/// `sys`. The tangent is the five-point (fourth-order) derivative in the
/// parameter. `F` is not differentiable on the axes, so a stencil is
/// skipped unless all its preimages under `f` stay `axis_exclusion`
/// radians away from both axes.
pub fn parallelism_residual(
    curve: &[(f64, f64, f64)],
    f: &QuadrantMap,
    sys: &PlanarSystem,
    axis_exclusion: f64,
) -> ParallelismReport {
    let mut max: f64 = 0.0;
    let mut sum = 0.0;
    let mut used = 0;
    let mut excluded = 0;
    for w in curve.windows(5) {
        let (tc, xc, yc) = w[2];
        let near_axis = w.iter().any(|&(_, x, y)| {
            let (u, v) = f.inverse((x, y));
            let a = v.atan2(u).rem_euclid(FRAC_PI_2);
            a < axis_exclusion || a > FRAC_PI_2 - axis_exclusion
        });
        if near_axis {
            excluded += 1;
            continue;
        }
        let t: Vec<f64> = w.iter().map(|p| p.0).collect();
        let (mut vx, mut vy) = (0.0, 0.0);
        for (j, p) in w.iter().enumerate() {
            let wj = lagrange_derivative_weight(&t, j, 2, tc);
            vx += wj * p.1;
            vy += wj * p.2;
        }
        let (p, q) = sys.eval(xc, yc);
        let res = (p * vy - q * vx).abs() / (p.hypot(q) * vx.hypot(vy));
        max = max.max(res);
        sum += res;
        used += 1;
    }
    excluded += curve.len().min(4);
    ParallelismReport {
        max_residual: max,
        mean_residual: if used > 0 { sum / used as f64 } else { 0.0 },
        used,
        excluded,
    }
}

/// `L_j'(t_c)` for the Lagrange basis on nodes `t`, where `t_c = t[c]`.
fn lagrange_derivative_weight(t: &[f64], j: usize, c: usize, tc: f64) -> f64 {
    if j == c {
        return (0..t.len()).filter(|&m| m != c).map(|m| 1.0 / (tc - t[m])).sum();
    }
    let mut num = 1.0;
    let mut den = 1.0;
    for m in 0..t.len() {
        if m != j {
            den *= t[j] - t[m];
            if m != c {
                num *= tc - t[m];
            }
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flowint::{integrate_with, IntegrateOptions, StopRule};
    use crate::systems::{make_deg_nn, make_weak_focus, Orientation};

    fn sample(max_step: f64) -> Trajectory {
        let wf = make_weak_focus(1, Orientation::Attracting).unwrap();
        let opts = IntegrateOptions {
            max_step,
            ..IntegrateOptions::with_tol(1e-12)
        };
        integrate_with(&wf, (0.5, 0.1), StopRule::Windings(1.0), &opts).unwrap()
    }

    #[test]
    fn pushforward_is_parallel_to_degenerate_field() {
        let tr = sample(2e-4);
        for n in [2, 3] {
            let f = QuadrantMap::new(n, n).unwrap();
            let img = pushforward(&tr, &f);
            let target = make_deg_nn(1, n, Orientation::Attracting, 0.0).unwrap();
            let rep = parallelism_residual(&img, &f, &target, 0.05);
            assert!(rep.used > 1000);
            assert!(rep.max_residual < 1e-6, "n={n}: {}", rep.max_residual);
        }
    }

    #[test]
    fn wrong_field_is_detected() {
        let tr = sample(1e-3);
        let f = QuadrantMap::new(2, 2).unwrap();
        let img = pushforward(&tr, &f);
        let wrong = make_deg_nn(1, 3, Orientation::Attracting, 0.0).unwrap();
        assert!(parallelism_residual(&img, &f, &wrong, 0.05).max_residual > 1e-2);
    }

    #[test]
    fn derivative_weights_are_exact_on_quartics() {
        let t = [0.0, 0.3, 0.35, 0.9, 1.0];
        let f = |s: f64| 1.0 - 2.0 * s + s.powi(4);
        let d: f64 = (0..5)
            .map(|j| lagrange_derivative_weight(&t, j, 2, t[2]) * f(t[j]))
            .sum();
        assert!((d - (-2.0 + 4.0 * 0.35f64.powi(3))).abs() < 1e-12);
    }
}
