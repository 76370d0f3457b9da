use focusdim::bifurc::{
    cyclicity_experiment, find_limit_cycles, hopf_exponent, hopf_sweep, return_map, CycleSearch,
    Perturbation, Stability,
};
use focusdim::flowint::{crossings, integrate_rescaled, StopRule, Transversal};
use focusdim::fracdim::{formula_theorem1, sequence_dimension};
use focusdim::polyfield::HomogeneousForm;
use focusdim::systems::{make_deg_nn, make_homogeneous, make_weak_focus, Orientation, PlanarSystem};
use proptest::prelude::*;
use std::f64::consts::TAU;

const MINUS: Orientation = Orientation::Attracting;

fn log_lambdas(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    // Ascending from -hi to -lo.
    (0..count)
        .map(|i| -hi * (lo / hi).powf(i as f64 / (count - 1) as f64))
        .collect()
}

#[test]
fn hopf_exponent_is_one_over_two_k() {
    for (k, lo, hi, window) in [(1, 1e-3, 0.1, (0.01, 0.5)), (2, 1e-3, 0.05, (0.05, 0.6))] {
        let ray = Transversal::new(0.0, window.0, window.1).unwrap();
        let pts = hopf_sweep(k, 1, &log_lambdas(lo, hi, 7), &ray, 24, &CycleSearch::default()).unwrap();
        for p in &pts {
            let rep = p.report.as_ref().unwrap();
            assert_eq!(rep.cycles.len(), 1, "k={k} lambda={}", p.lambda);
            assert_eq!(rep.cycles[0].stability, Stability::Attracting);
            assert!(rep.cycles[0].residual < 1e-6);
            assert!((rep.cycles[0].r - p.predicted_r.unwrap()).abs() < 1e-4);
        }
        let fit = hopf_exponent(&pts).unwrap();
        let want = 1.0 / (2 * k) as f64;
        assert!((fit.slope - want).abs() < 0.02, "k={k}: {} vs {want}", fit.slope);
    }
}

#[test]
fn second_order_family_has_one_cycle() {
    let ray = Transversal::new(0.0, 0.05, 0.5).unwrap();
    let pts = hopf_sweep(1, 2, &[-0.04], &ray, 32, &CycleSearch::default()).unwrap();
    let rep = pts[0].report.as_ref().unwrap();
    assert_eq!(rep.cycles.len(), 1);
    assert!(pts[0].predicted_r.is_none());
    assert!(rep.cycles[0].residual < 1e-6);
}

#[test]
fn positive_lambda_has_no_cycle() {
    let ray = Transversal::new(0.0, 0.05, 0.5).unwrap();
    let sys = make_deg_nn(1, 1, MINUS, 0.05).unwrap();
    let rep = find_limit_cycles(&sys, &ray, 16).unwrap();
    assert!(rep.cycles.is_empty());
}

fn attracting_families() -> Vec<PlanarSystem> {
    let mut v = Vec::new();
    for k in 1..=2 {
        for n in 1..=2 {
            v.push(make_deg_nn(k, n, MINUS, 0.0).unwrap());
        }
        v.push(make_weak_focus(k, MINUS).unwrap());
    }
    v.push(make_homogeneous(1, &HomogeneousForm::scaled_rho_power(-1.0, 2)).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // The k = n = 2 map moves r by about r⁹ per turn, which drops below the
    // integration error near r = 0.05; the window starts where it is resolved.
    #[test]
    fn return_map_contracts(r in 0.15..0.6f64, angle in 0.0..TAU) {
        for sys in attracting_families() {
            let p = return_map(&sys, &Transversal::ray(angle), r, 1e-12).unwrap();
            prop_assert!(p < r && p > 0.0, "{:?}: {} -> {}", sys.family, r, p);
        }
    }
}

#[test]
fn crossing_radii_strictly_decrease() {
    for sys in attracting_families() {
        let tr = integrate_rescaled(&sys, (0.5, 0.0), StopRule::Windings(50.0), 1e-10).unwrap();
        let orbit = crossings(&tr, &Transversal::ray(0.0)).unwrap();
        assert!(orbit.len() >= 49);
        assert!(orbit.is_strictly_decreasing(), "{:?}", sys.params);
    }
}

#[test]
fn orbit_dimension_is_half_the_spiral_dimension() {
    for (k, n) in [(1, 1), (1, 2), (2, 2)] {
        let sys = make_deg_nn(k, n, MINUS, 0.0).unwrap();
        let tr = integrate_rescaled(&sys, (1.0, 0.0), StopRule::Windings(2000.0), 1e-10).unwrap();
        let orbit = crossings(&tr, &Transversal::ray(0.0)).unwrap();
        let est = sequence_dimension(&orbit.radii).unwrap();
        let want = formula_theorem1(k, n).unwrap() / 2.0;
        assert!(
            (est.d_hat - want).abs() < 0.05,
            "k={k} n={n}: {} vs {want}",
            est.d_hat
        );
    }
}

#[test]
fn unperturbed_bases_have_no_small_cycles() {
    for (k, s) in [(0, 2), (1, 4), (1, 6)] {
        let r = HomogeneousForm::scaled_rho_power(-1.0, s / 2);
        let p = Perturbation::radial("rho", &[(s / 2, 1.0)]);
        let exp = cyclicity_experiment(k, s, &r, &[p], &[0.0]).unwrap();
        assert_eq!(exp.max_count, 0);
        assert_eq!(exp.paper_bound, s as f64 / 2.0);
    }
}

#[test]
fn radial_perturbation_of_weak_focus_gives_one_cycle() {
    // R = −u + ε(2u − 8u²) with u = r² vanishes at u = (2ε − 1)/(8ε).
    let r = HomogeneousForm::scaled_rho_power(-1.0, 1);
    let p = Perturbation::radial("2u-8u2", &[(1, 2.0), (2, -8.0)]);
    let exp = cyclicity_experiment(0, 2, &r, &[p], &[0.0, 0.25, 0.75, 1.0]).unwrap();
    let counts: Vec<usize> = exp.reports.iter().map(|r| r.cycle_count).collect();
    assert_eq!(counts, vec![0, 0, 1, 1]);
    for rep in &exp.reports[2..] {
        let want = ((2.0 * rep.eps - 1.0) / (8.0 * rep.eps)).sqrt();
        assert!(
            (rep.cycles[0].r - want).abs() < 1e-6,
            "{} vs {want}",
            rep.cycles[0].r
        );
    }
    assert_eq!(exp.max_count, 1);
    assert_eq!(exp.paper_bound, 1.0);
}

#[test]
fn radial_perturbation_with_two_cycles() {
    // R = −u² + ε u²(0.36 + 20u − 100u²): at ε = 1 the roots are u = 0.04 and 0.16.
    let r = HomogeneousForm::scaled_rho_power(-1.0, 2);
    let p = Perturbation::radial("two", &[(2, 0.36), (3, 20.0), (4, -100.0)]);
    let exp = cyclicity_experiment(1, 4, &r, &[p], &[0.0, 0.5, 0.8, 1.0]).unwrap();
    let counts: Vec<usize> = exp.reports.iter().map(|r| r.cycle_count).collect();
    assert_eq!(counts, vec![0, 0, 2, 2]);
    let last = &exp.reports[3].cycles;
    assert!((last[0].r - 0.2).abs() < 1e-6 && last[0].stability == Stability::Repelling);
    assert!((last[1].r - 0.4).abs() < 1e-6 && last[1].stability == Stability::Attracting);
}
