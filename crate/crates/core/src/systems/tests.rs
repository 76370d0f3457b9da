use super::*;
use crate::polyfield::HomogeneousForm;
use proptest::prelude::*;

const MINUS: Orientation = Orientation::Attracting;
const PLUS: Orientation = Orientation::Repelling;

fn poly(terms: &[(u32, u32, f64)]) -> BivariatePoly {
    BivariatePoly::from_terms(terms.iter().copied())
}

#[test]
fn weak_focus_examples() {
    let s = make_weak_focus(1, MINUS).unwrap();
    assert_eq!(s.p.part(0), &poly(&[(0, 1, -1.0), (3, 0, -1.0), (1, 2, -1.0)]));
    assert_eq!(s.q.part(0), &poly(&[(1, 0, 1.0), (2, 1, -1.0), (0, 3, -1.0)]));
    let s = make_weak_focus(2, PLUS).unwrap();
    assert_eq!(
        s.p.part(0),
        &poly(&[(0, 1, -1.0), (5, 0, 1.0), (3, 2, 2.0), (1, 4, 1.0)])
    );
    assert!(matches!(make_weak_focus(0, MINUS), Err(Error::BadParameter(_))));
}

#[test]
fn deg_nn_printed_terms() {
    let s = make_deg_nn(1, 2, MINUS, 0.0).unwrap();
    let printed = s.printed();
    assert_eq!(
        printed.p.part(0),
        &poly(&[(0, 3, -1.0), (6, 1, -1.0), (2, 5, -1.0)])
    );
    assert_eq!(
        printed.q.part(0),
        &poly(&[(3, 0, 1.0), (5, 2, -1.0), (1, 6, -1.0)])
    );
    // The twisted part carries sgn(x)sgn(y).
    assert_eq!(s.p.part(0), &poly(&[(0, 3, -1.0)]));
    assert!(!s.p.part(3).is_zero());
    assert!(matches!(
        make_deg_nn(0, 1, MINUS, 0.0),
        Err(Error::BadParameter(_))
    ));
    assert!(matches!(
        make_deg_nn(1, 0, MINUS, 0.0),
        Err(Error::BadParameter(_))
    ));
}

#[test]
fn deg_nn_at_n1_is_weak_focus() {
    let a = make_deg_nn(1, 1, MINUS, 0.0).unwrap();
    let b = make_weak_focus(1, MINUS).unwrap();
    assert!(a.is_polynomial());
    assert_eq!(a.p, b.p);
    assert_eq!(a.q, b.q);
}

#[test]
fn deg_nn_lambda_adds_linear_term() {
    let s = make_deg_nn(1, 1, MINUS, -0.04).unwrap();
    assert_eq!(s.family, Family::DegNnLambda);
    assert!((s.p.part(0).coeff(1, 0) - 0.04).abs() < 1e-15);
    assert!((s.q.part(0).coeff(0, 1) - 0.04).abs() < 1e-15);
}

#[test]
fn odd_n_is_exactly_printed() {
    for k in 1..=3 {
        let s = make_deg_nn(k, 3, MINUS, 0.0).unwrap();
        assert!(s.is_polynomial());
        assert_eq!(s.printed().p, s.p);
    }
}

#[test]
fn twisted_field_is_the_pushforward_in_each_quadrant() {
    // Inside an open quadrant, F_{n,n} maps weak-focus orbits to orbits of
    // the twisted field. Check (D F) X_wf ∥ X_nn at the image point.
    for n in [2u32, 3] {
        let wf = make_weak_focus(1, MINUS).unwrap();
        let dn = make_deg_nn(1, n, MINUS, 0.0).unwrap();
        let f = QuadrantMap::new(n, n).unwrap();
        for &(u, v) in &[(0.3, 0.2), (-0.4, 0.1), (-0.2, -0.5), (0.6, -0.3)] {
            let (a, b) = wf.eval(u, v);
            let (x, y) = f.forward((u, v));
            let nf = n as f64;
            let dfx = x.abs().powf(1.0 - nf) / nf;
            let dfy = y.abs().powf(1.0 - nf) / nf;
            let (v1, v2) = (dfx * a, dfy * b);
            let (p, q) = dn.eval(x, y);
            let cross = (p * v2 - q * v1) / (p.hypot(q) * v1.hypot(v2));
            assert!(cross.abs() < 1e-12, "n={n} at ({u},{v}): {cross}");
            assert!(p * v1 + q * v2 > 0.0);
        }
    }
}

#[test]
fn deg_mn_reductions() {
    let a = make_deg_mn(1, 1, 1, MINUS).unwrap();
    let b = make_weak_focus(1, MINUS).unwrap();
    assert_eq!(a.p, b.p);
    assert_eq!(a.q, b.q);
    // m = n: the deg_mn field is n times the deg_nn field.
    for n in 1..=3 {
        let a = make_deg_mn(1, n, n, MINUS).unwrap();
        let b = make_deg_nn(1, n, MINUS, 0.0).unwrap();
        assert_eq!(a.p, b.p.scale(n as f64));
        assert_eq!(a.q, b.q.scale(n as f64));
    }
    let s = make_deg_mn(1, 2, 1, MINUS).unwrap().printed();
    // P = -y - x²(x⁴+y²), Q = 2x³ - 2xy(x⁴+y²)
    assert_eq!(s.p.part(0), &poly(&[(0, 1, -1.0), (6, 0, -1.0), (2, 2, -1.0)]));
    assert_eq!(s.q.part(0), &poly(&[(3, 0, 2.0), (5, 1, -2.0), (1, 3, -2.0)]));
}

#[test]
fn homogeneous_examples() {
    let r = HomogeneousForm::scaled_rho_power(-1.0, 1);
    let h = make_homogeneous(0, &r).unwrap();
    let w = make_weak_focus(1, MINUS).unwrap();
    assert_eq!(h.p, w.p);
    assert_eq!(h.q, w.q);
    assert_eq!(h.params.orientation, MINUS);

    let r4 = HomogeneousForm::scaled_rho_power(-1.0, 2);
    let h = make_homogeneous(1, &r4).unwrap();
    assert_eq!(h.params.s, Some(4));
    assert!((crate::polyfield::focus_integral(&r4) + 2.0 * std::f64::consts::PI).abs() < 1e-12);

    let r2 = HomogeneousForm::new(2, vec![1.0, 0.0, 0.0]);
    assert!(matches!(make_homogeneous(1, &r2), Err(Error::BadParameter(_))));
    let r3 = HomogeneousForm::new(3, vec![1.0, 0.0, 0.0, 0.0]);
    assert!(matches!(make_homogeneous(0, &r3), Err(Error::BadParameter(_))));
}

#[test]
fn annulus_examples() {
    let a = make_annulus(1).unwrap();
    assert_eq!(a.conserved, Some(poly(&[(2, 0, 1.0), (0, 2, 1.0)])));
    let a = make_annulus(2).unwrap();
    assert_eq!(a.p.part(0), &poly(&[(0, 3, -1.0)]));
    assert_eq!(a.q.part(0), &poly(&[(3, 0, 1.0)]));
    assert_eq!(a.conserved, Some(poly(&[(4, 0, 1.0), (0, 4, 1.0)])));
    assert!(make_annulus(0).is_err());
    // H is a first integral: ∇H·X ≡ 0.
    let h = a.conserved.clone().unwrap();
    for &(x, y) in &[(0.3, -1.2), (2.0, 0.5)] {
        let (p, q) = a.eval(x, y);
        let d = 1e-6;
        let hx = (h.eval(x + d, y) - h.eval(x - d, y)) / (2.0 * d);
        let hy = (h.eval(x, y + d) - h.eval(x, y - d)) / (2.0 * d);
        assert!((hx * p + hy * q).abs() < 1e-6);
    }
}

#[test]
fn perturb_guards() {
    let base = make_homogeneous(1, &HomogeneousForm::scaled_rho_power(-1.0, 2)).unwrap();
    let x4 = poly(&[(4, 0, 1.0)]);
    let zero = BivariatePoly::zero();
    let same = perturb(&base, &x4, &zero, 0.0).unwrap();
    assert_eq!(same.p, base.p);
    assert_eq!(same.q, base.q);
    assert_eq!(same.family, Family::Custom);
    let p = perturb(&base, &x4, &zero, 0.1).unwrap();
    assert!((p.p.part(0).coeff(4, 0) - 0.1).abs() < 1e-15);
    let x2 = poly(&[(2, 0, 1.0)]);
    assert!(matches!(
        perturb(&base, &x2, &zero, 0.1),
        Err(Error::BadPerturbation(_))
    ));

    let dn = make_deg_nn(1, 2, MINUS, 0.0).unwrap();
    assert!(matches!(
        perturb(&dn, &x4, &zero, 0.1),
        Err(Error::BadPerturbation(_))
    ));
    assert!(perturb_forced(&dn, &x4, &zero, 0.1).is_ok());
    assert!(perturb_forced(&dn, &poly(&[(3, 0, 1.0)]), &zero, 0.1).is_err());
}

#[test]
fn deg_nn_has_no_characteristic_directions() {
    for k in 1..=3 {
        for n in 1..=3 {
            for o in [MINUS, PLUS] {
                let s = make_deg_nn(k, n, o, 0.0).unwrap();
                let d = s.characteristic_directions().unwrap();
                assert_eq!(d.kind, DirectionKind::Empty, "k={k} n={n}");
                let d = s.printed().characteristic_directions().unwrap();
                assert_eq!(d.kind, DirectionKind::Empty, "printed k={k} n={n}");
            }
        }
    }
}

#[test]
fn other_families_monodromic() {
    for s in [
        make_weak_focus(2, MINUS).unwrap(),
        make_deg_mn(2, 2, 2, MINUS).unwrap(),
        make_annulus(3).unwrap(),
        make_homogeneous(1, &HomogeneousForm::scaled_rho_power(-1.0, 3)).unwrap(),
    ] {
        assert!(s.characteristic_directions().unwrap().is_empty(), "{}", s.family);
    }
}

#[test]
fn deg_mn_unequal_exponents_has_horizontal_direction() {
    // Lowest-degree parts are -n y^{2n-1} and 0 when m > n, so
    // y P_d - x Q_d = -n y^{2n}: the horizontal line, although the
    // origin is still a focus.
    for (m, n) in [(2, 1), (3, 2)] {
        let s = make_deg_mn(1, m, n, MINUS).unwrap();
        let d = s.characteristic_directions().unwrap();
        assert_eq!(d.kind, DirectionKind::Finite);
        assert_eq!(d.directions.len(), 1);
        assert_eq!(d.directions[0].angle, 0.0);
        assert_eq!(d.directions[0].multiplicity, 2 * n as usize);
    }
}

#[test]
fn twisted_char_directions_filter_by_quadrant() {
    // x² in quadrant I/III, -x² in II/IV for P; Q = y²: each quadrant
    // polynomial has its own tangent cone, only those inside it count.
    let p = SignedPoly::twisted(poly(&[(2, 0, 1.0)]), 3);
    let q = SignedPoly::plain(poly(&[(0, 2, 1.0)]));
    let s = PlanarSystem::custom_signed(p, q);
    let d = s.characteristic_directions().unwrap();
    let angles: Vec<f64> = d.directions.iter().map(|d| d.angle).collect();
    // Quadrant I: xy(x - y) → 0, π/4, π/2. Quadrant II: F = -x²y - xy² →
    // 0, π/2, 3π/4.
    assert_eq!(angles.len(), 4, "{angles:?}");
    assert!(angles
        .iter()
        .any(|a| (a - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-9));
}

#[test]
fn family_names_round_trip() {
    for f in [
        Family::WeakFocus,
        Family::DegNn,
        Family::DegNnLambda,
        Family::Homogeneous,
        Family::DegMn,
        Family::Annulus,
        Family::Custom,
    ] {
        assert_eq!(Family::from_name(f.name()), Some(f));
    }
    assert_eq!(Family::from_name("nope"), None);
}

proptest! {
    #[test]
    fn deg_mn_rotates_counterclockwise(
        k in 1u32..=2, m in 1u32..=3, n in 1u32..=3,
        r in 0.05f64..1.0, phi in 0.0f64..std::f64::consts::TAU
    ) {
        let s = make_deg_mn(k, m, n, MINUS).unwrap();
        let (x, y) = (r * phi.cos(), r * phi.sin());
        prop_assert!(s.angular_velocity(x, y) > 0.0);
    }

    #[test]
    fn deg_nn_attracts_radially_in_h(
        k in 1u32..=3, n in 1u32..=3,
        r in 0.05f64..1.0, phi in 0.0f64..std::f64::consts::TAU
    ) {
        // dH/dt = -2n (x^{2n}+y^{2n})^k |x|^{2n-1}... ≤ 0 off the axes.
        let s = make_deg_nn(k, n, MINUS, 0.0).unwrap();
        let (x, y) = (r * phi.cos(), r * phi.sin());
        let (p, q) = s.eval(x, y);
        let nn = 2 * n as i32;
        let hdot = nn as f64 * (x.powi(nn - 1) * p + y.powi(nn - 1) * q);
        prop_assert!(hdot <= 1e-15);
    }
}
