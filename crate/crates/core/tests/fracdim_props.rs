use std::collections::HashSet;
use std::f64::consts::{PI, TAU};

use focusdim::fracdim::synthetic::power_spiral;
use focusdim::fracdim::{
    box_count, eps_area, estimate_dimension_with, linear_fit, measure_dimension, sequence_dimension,
    sequence_dimension_with, spiral_dimension, EpsGrid, EstimateOptions, MeasureConfig, Method, SpiralCurve,
};
use focusdim::systems::{make_deg_mn, Orientation, QuadrantMap};
use proptest::prelude::*;

const NO_PROFILE: EstimateOptions = EstimateOptions {
    d_ref: None,
    profile: false,
};

/// Box count by dense sampling of `r = phi^-alpha`, with the disc inside the
/// last winding filled. Shares no code with the estimator.
fn sampled_count(alpha: f64, phi_end: f64, eps: f64) -> usize {
    let mut cells = HashSet::new();
    let mut phi = 1.0f64;
    while phi <= phi_end {
        let r = phi.powf(-alpha);
        cells.insert((
            (r * phi.cos() / eps).floor() as i64,
            (r * phi.sin() / eps).floor() as i64,
        ));
        phi += eps / 8.0 / r.max(1e-12);
    }
    let r_in = phi_end.powf(-alpha);
    let n = (r_in / eps).ceil() as i64 + 1;
    for i in -n..n {
        for j in -n..n {
            let (cx, cy) = ((i as f64 + 0.5) * eps, (j as f64 + 0.5) * eps);
            if cx.hypot(cy) < r_in {
                cells.insert((i, j));
            }
        }
    }
    cells.len()
}

fn fine_power_spiral(alpha: f64, windings: f64) -> (SpiralCurve, EpsGrid) {
    let coarse = power_spiral(alpha, windings, 1e-4).unwrap();
    let lo = EpsGrid::for_curve(&coarse).unwrap().lo();
    let curve = power_spiral(alpha, windings, lo / 16.0).unwrap();
    let grid = EpsGrid::for_curve(&curve).unwrap();
    (curve, grid)
}

#[test]
fn power_spirals_match_two_over_one_plus_alpha() {
    // The resolved length grows like phi^{1-alpha} - 1, so alpha near 1 needs
    // many windings before the offset stops lifting the slope.
    for alpha in [0.3, 0.5, 0.8] {
        let (curve, grid) = fine_power_spiral(alpha, 600.0);
        let est = estimate_dimension_with(&curve, &grid, Method::BoxCount, &NO_PROFILE).unwrap();
        let want = spiral_dimension(alpha);
        assert!(
            (est.d_hat - want).abs() < 0.07,
            "alpha={alpha}: {} vs {want}",
            est.d_hat
        );
    }
}

#[test]
fn power_spiral_counts_match_brute_force() {
    let windings = 60.0;
    let grid = EpsGrid::geometric(0.1, 3e-4, 12).unwrap();
    for alpha in [0.3, 0.5, 0.8] {
        let (curve, _) = fine_power_spiral(alpha, windings);
        let est = estimate_dimension_with(&curve, &grid, Method::BoxCount, &NO_PROFILE).unwrap();
        let phi_end = 1.0 + TAU * windings;
        let (x, y): (Vec<f64>, Vec<f64>) = grid
            .values()
            .iter()
            .map(|&e| (-e.ln(), (sampled_count(alpha, phi_end, e) as f64).ln()))
            .unzip();
        let oracle = linear_fit(&x, &y).slope;
        assert!(
            (est.d_hat - oracle).abs() < 0.02,
            "alpha={alpha}: {} vs oracle {oracle}",
            est.d_hat
        );
    }
}

/// Exact number of grid intervals `[i eps, (i+1) eps)` meeting the sequence
/// and its tail. Terms past the last one are closer together than any scale
/// used here, so the tail covers `[0, min r_j]`.
fn interval_count(seq: &[f64], eps: f64) -> usize {
    let r_min = seq.iter().copied().fold(f64::INFINITY, f64::min);
    let mut cells: HashSet<i64> = seq.iter().map(|r| (r / eps).floor() as i64).collect();
    cells.extend(0..=(r_min / eps).floor() as i64);
    cells.len()
}

#[test]
fn power_sequences_match_one_over_one_plus_beta() {
    for beta in [1.0 / 3.0, 0.5, 1.0] {
        let seq: Vec<f64> = (1..=20_000).map(|j| (j as f64).powf(-beta)).collect();
        let est = sequence_dimension(&seq).unwrap();
        let want = 1.0 / (1.0 + beta);
        assert!(
            (est.d_hat - want).abs() < 0.05,
            "beta={beta}: {} vs {want}",
            est.d_hat
        );

        let grid = EpsGrid::for_sequence(&seq).unwrap();
        let (x, y): (Vec<f64>, Vec<f64>) = grid
            .values()
            .iter()
            .map(|&e| (-e.ln(), (interval_count(&seq, e) as f64).ln()))
            .unzip();
        let oracle = linear_fit(&x, &y).slope;
        assert!(
            (est.d_hat - oracle).abs() < 0.05,
            "beta={beta}: {} vs oracle {oracle}",
            est.d_hat
        );
    }
}

#[test]
fn geometric_sequence_has_dimension_zero() {
    let seq: Vec<f64> = (1..=200).map(|j| 0.5f64.powi(j)).collect();
    let est = sequence_dimension(&seq).unwrap();
    assert!(est.d_hat.abs() < 0.05, "{}", est.d_hat);
}

#[test]
fn explicit_grid_for_sequences() {
    let seq: Vec<f64> = (1..=5000).map(|j| 1.0 / j as f64).collect();
    let grid = EpsGrid::geometric(1e-2, 1e-5, 16).unwrap();
    let est = sequence_dimension_with(&seq, &grid, None).unwrap();
    assert!((est.d_hat - 0.5).abs() < 0.05, "{}", est.d_hat);
}

#[test]
fn straight_segment_is_one_dimensional() {
    let pts: Vec<(f64, f64)> = (0..=1000)
        .map(|i| (i as f64 / 1000.0, 0.3 * i as f64 / 1000.0))
        .collect();
    let curve = SpiralCurve::polyline(&pts);
    let grid = EpsGrid::geometric(0.05, 1e-4, 16).unwrap();
    for method in [Method::BoxCount, Method::MinkowskiSlope] {
        let est = estimate_dimension_with(&curve, &grid, method, &NO_PROFILE).unwrap();
        assert!((est.d_hat - 1.0).abs() < 0.03, "{method:?}: {}", est.d_hat);
        assert!(!est.poor_fit);
    }
}

#[test]
fn minkowski_slope_agrees_with_box_count_on_a_spiral() {
    let coarse = power_spiral(0.5, 60.0, 1e-4).unwrap();
    let lo = EpsGrid::for_curve(&coarse).unwrap().lo();
    let curve = power_spiral(0.5, 60.0, lo / 16.0).unwrap();
    let grid = EpsGrid::for_curve(&curve).unwrap();
    let opts = EstimateOptions {
        d_ref: Some(4.0 / 3.0),
        profile: true,
    };
    let a = estimate_dimension_with(&curve, &grid, Method::BoxCount, &opts).unwrap();
    let b = estimate_dimension_with(&curve, &grid, Method::MinkowskiSlope, &opts).unwrap();
    assert!((a.d_hat - b.d_hat).abs() < 0.05, "{} vs {}", a.d_hat, b.d_hat);
    assert!(a.band_ratio().unwrap() < 10.0);
}

/// Points of the weak-focus spiral `r = (1 + 2φ)^{-1/2}` mapped by `F`, sampled
/// by halving steps until every chord is within `sagitta` of the mapped curve.
fn mapped_weak_focus(f: &QuadrantMap, windings: f64, sagitta: f64) -> SpiralCurve {
    let at = |phi: f64| {
        let r = (1.0 + 2.0 * phi).powf(-0.5);
        f.forward((r * phi.cos(), r * phi.sin()))
    };
    let mut pts = vec![at(0.0)];
    let mut phis = vec![0.0];
    let end = TAU * windings;
    let mut a = 0.0;
    while a < end {
        let mut b = (a + 0.05).min(end);
        loop {
            let (p, q) = (at(a), at(b));
            let (dx, dy) = (q.0 - p.0, q.1 - p.1);
            let len = dx.hypot(dy).max(1e-300);
            // Three probes: an S-bend straddling an axis passes through the
            // chord's midpoint.
            let dev = [0.25, 0.5, 0.75]
                .iter()
                .map(|t| {
                    let m = at(a + t * (b - a));
                    ((m.0 - p.0) * dy - (m.1 - p.1) * dx).abs() / len
                })
                .fold(0.0, f64::max);
            // Chord times total absolute turning, the deviation measure the
            // estimator checks.
            let probes: Vec<(f64, f64)> = (0..=4).map(|i| at(a + 0.25 * i as f64 * (b - a))).collect();
            let turn: f64 = probes
                .windows(3)
                .map(|w| {
                    let (u, v) = (
                        (w[1].0 - w[0].0, w[1].1 - w[0].1),
                        (w[2].0 - w[1].0, w[2].1 - w[1].1),
                    );
                    (u.0 * v.1 - u.1 * v.0).atan2(u.0 * v.0 + u.1 * v.1).abs()
                })
                .sum();
            if (dev <= sagitta && len * turn / 8.0 <= sagitta) || b - a < 1e-9 {
                break;
            }
            b = 0.5 * (a + b);
        }
        pts.push(at(b));
        phis.push(b);
        a = b;
    }
    let (x, y) = pts.into_iter().unzip();
    SpiralCurve::spiral(x, y, &phis)
}

#[test]
fn degenerate_mn_trajectory_matches_mapped_weak_focus() {
    // The field with (x^{2m} + y^{2n})^k is the image of the k weak focus
    // under F_{m,n}, up to time rescaling, and both start at (1, 0).
    for (m, n) in [(2, 1), (3, 2)] {
        let sys = make_deg_mn(1, m, n, Orientation::Attracting).unwrap();
        let got = measure_dimension(
            &sys,
            &MeasureConfig {
                profile: false,
                ..Default::default()
            },
        )
        .unwrap();
        let f = QuadrantMap::new(m, n).unwrap();
        let coarse = mapped_weak_focus(&f, 200.0, 1e-4);
        let lo = EpsGrid::for_curve(&coarse).unwrap().lo();
        let image = mapped_weak_focus(&f, 200.0, lo / 16.0);
        let grid = EpsGrid::for_curve(&image).unwrap();
        let oracle = estimate_dimension_with(&image, &grid, Method::BoxCount, &NO_PROFILE).unwrap();
        assert!(
            (got.estimate.d_hat - oracle.d_hat).abs() < 0.02,
            "m={m} n={n}: {} vs {}",
            got.estimate.d_hat,
            oracle.d_hat
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segment_area_is_a_stadium(
        x0 in -2.0..2.0f64, y0 in -2.0..2.0f64,
        x1 in -2.0..2.0f64, y1 in -2.0..2.0f64,
        eps in 0.01..0.3f64,
    ) {
        let len = (x1 - x0).hypot(y1 - y0);
        let want = 2.0 * eps * len + PI * eps * eps;
        let got = eps_area(&[(x0, y0), (x1, y1)], eps).unwrap();
        prop_assert!((got - want).abs() < 0.02 * want, "{} vs {}", got, want);
    }

    #[test]
    fn far_points_add_discs(x in -5.0..5.0f64, y in -5.0..5.0f64, eps in 0.01..0.2f64) {
        let got = eps_area(&[(x, y), (x, y), (x + 10.0, y - 10.0)], eps).unwrap();
        // The two points are joined by a segment, so compare against that stadium.
        let want = 2.0 * eps * 200f64.sqrt() + PI * eps * eps;
        prop_assert!((got - want).abs() < 0.02 * want);
    }

    #[test]
    fn box_count_is_translation_stable(dx in 0.0..1.0f64, dy in 0.0..1.0f64) {
        // Shifting by a whole number of cells leaves the count unchanged.
        let eps = 0.05;
        let base: Vec<(f64, f64)> = (0..=200)
            .map(|i| {
                let a = i as f64 * 0.05;
                (0.3 * a.cos() + dx * 0.01, 0.3 * a.sin() + dy * 0.01)
            })
            .collect();
        let moved: Vec<(f64, f64)> = base.iter().map(|p| (p.0 + 7.0 * eps, p.1 - 3.0 * eps)).collect();
        prop_assert_eq!(box_count(&base, eps).unwrap(), box_count(&moved, eps).unwrap());
    }

    #[test]
    fn neighbourhood_area_grows_with_eps(e in 0.005..0.1f64) {
        let pts: Vec<(f64, f64)> = (0..=400)
            .map(|i| {
                let a = i as f64 * 0.05;
                let r = (1.0 + a).powf(-0.5);
                (r * a.cos(), r * a.sin())
            })
            .collect();
        let a = eps_area(&pts, e).unwrap();
        let b = eps_area(&pts, 1.5 * e).unwrap();
        prop_assert!(b > a);
    }
}
