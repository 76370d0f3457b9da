use std::f64::consts::TAU;

use focusdim::flowint::{
    crossings, integrate, integrate_rescaled, integrate_with, polar_oracle_hom, IntegrateOptions, StopRule,
    Transversal,
};
use focusdim::polyfield::HomogeneousForm;
use focusdim::systems::{
    make_deg_mn, make_deg_nn, make_homogeneous, make_weak_focus, Orientation, PlanarSystem,
};
use proptest::prelude::*;

const MINUS: Orientation = Orientation::Attracting;

fn rho_family(k: u32, s: u32) -> (HomogeneousForm, PlanarSystem) {
    let r = HomogeneousForm::scaled_rho_power(-1.0, s / 2);
    let sys = make_homogeneous(k, &r).unwrap();
    (r, sys)
}

#[test]
fn homogeneous_matches_polar_oracle_after_one_turn() {
    for (k, s) in [(0, 2), (1, 4), (1, 6)] {
        let (r, sys) = rho_family(k, s);
        let r0 = 0.4;
        let tr = integrate(&sys, (r0, 0.0), StopRule::Windings(1.0), 1e-12).unwrap();
        let got = tr.radius(tr.len() - 1);
        let want = polar_oracle_hom(k, &r, r0, TAU).unwrap();
        assert!((got - want).abs() < 1e-6 * want, "k={k} s={s}: {got} vs {want}");
    }
}

#[test]
fn non_radial_form_matches_oracle() {
    // R = -ρ⁴ - x³y: the angular modulation exercises the Fourier antiderivative.
    let r = HomogeneousForm::new(4, vec![-1.0, -1.0, -2.0, 0.0, -1.0]);
    let sys = make_homogeneous(1, &r).unwrap();
    let tr = integrate(&sys, (0.5, 0.0), StopRule::Windings(3.25), 1e-12).unwrap();
    let got = tr.radius(tr.len() - 1);
    let want = polar_oracle_hom(1, &r, 0.5, 3.25 * TAU).unwrap();
    assert!((got - want).abs() < 1e-7 * want, "{got} vs {want}");
}

#[test]
fn convergence_order_against_oracle() {
    // Error control is made inactive (tol at its loosest) so the chord limit
    // alone sets the step; halving it must cut the error by at least 8.
    let (r, sys) = rho_family(1, 4);
    let err = |h: f64| {
        let opts = IntegrateOptions {
            max_step: h,
            chord_rel: 1.0,
            ..IntegrateOptions::with_tol(1e-3)
        };
        let tr = integrate_with(&sys, (0.5, 0.0), StopRule::Windings(1.0), &opts).unwrap();
        let want = polar_oracle_hom(1, &r, 0.5, TAU).unwrap();
        (tr.radius(tr.len() - 1) - want).abs()
    };
    let (e1, e2) = (err(0.05), err(0.025));
    assert!(e1 / e2 >= 8.0, "{e1} {e2}");
}

#[test]
fn weak_focus_crossings_comparable_to_power_law() {
    for k in [1u32, 2] {
        let sys = make_weak_focus(k, MINUS).unwrap();
        let tr = integrate(&sys, (0.5, 0.0), StopRule::Windings(500.5), 1e-10).unwrap();
        let orb = crossings(&tr, &Transversal::ray(0.0)).unwrap();
        assert_eq!(orb.len(), 500);
        let e = 1.0 / (2 * k) as f64;
        let scaled: Vec<f64> = (10..=500)
            .map(|j| orb.radii[j - 1] * (j as f64).powf(e))
            .collect();
        let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
        let hi = scaled.iter().cloned().fold(0.0, f64::max);
        // Exact: r_j^{-2k} = r0^{-2k} + 4πk j, so r_j j^{1/2k} → (4πk)^{-1/2k}.
        let limit = (4.0 * std::f64::consts::PI * k as f64).powf(-e);
        assert!(
            lo > 0.8 * limit && hi < 1.2 * limit,
            "k={k}: [{lo}, {hi}] vs {limit}"
        );
    }
}

#[test]
fn crossings_strictly_decreasing_for_attracting_families() {
    let systems = vec![
        make_weak_focus(2, MINUS).unwrap(),
        make_deg_nn(1, 2, MINUS, 0.0).unwrap(),
        make_deg_nn(2, 3, MINUS, 0.0).unwrap(),
        make_deg_mn(1, 2, 1, MINUS).unwrap(),
        rho_family(1, 6).1,
    ];
    for sys in systems {
        let tr = integrate_rescaled(&sys, (0.6, 0.0), StopRule::Windings(25.1), 1e-10).unwrap();
        let orb = crossings(&tr, &Transversal::ray(2.0)).unwrap();
        assert_eq!(orb.len(), 25, "{}", sys.family);
        assert!(orb.is_strictly_decreasing(), "{}", sys.family);
    }
}

fn family(idx: usize) -> PlanarSystem {
    match idx {
        0 => make_weak_focus(1, MINUS).unwrap(),
        1 => make_weak_focus(2, MINUS).unwrap(),
        2 => make_deg_nn(1, 2, MINUS, 0.0).unwrap(),
        3 => make_deg_nn(1, 3, MINUS, 0.0).unwrap(),
        4 => make_deg_mn(1, 2, 1, MINUS).unwrap(),
        5 => make_deg_mn(1, 3, 2, MINUS).unwrap(),
        _ => rho_family(1, 4).1,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn winding_is_monotone(idx in 0usize..7, r0 in 0.2f64..0.9, a in 0.0f64..TAU) {
        let sys = family(idx);
        let tr = integrate_rescaled(&sys, (r0 * a.cos(), r0 * a.sin()), StopRule::Windings(3.0), 1e-9)
            .unwrap();
        for i in 1..tr.len() {
            prop_assert!(tr.phi[i] > tr.phi[i - 1]);
            prop_assert!(tr.t[i] > tr.t[i - 1]);
        }
    }
}
