use focusdim::polyfield::HomogeneousForm;
use focusdim::systems::{
    make_annulus, make_deg_mn, make_deg_nn, make_homogeneous, make_weak_focus, Orientation, PlanarSystem,
};
use focusdim_cli::dsl::{parse_system, render_system};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("sx".to_string()),
        Just("sy".to_string()),
        (0u32..20).prop_map(|n| n.to_string()),
        (0u32..100, 1u32..4).prop_map(|(a, d)| format!("{a}.{}", "5".repeat(d as usize))),
        (0u32..30, 1u32..12).prop_map(|(a, b)| format!("{a}/{b}")),
        (1u32..9, 0i32..4).prop_map(|(a, e)| format!("{a}e-{e}")),
    ]
}

fn expr() -> impl Strategy<Value = String> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
            inner.clone().prop_map(|a| format!("-({a})")),
            inner.prop_map(|a| format!("+{a}")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_print_round_trips(p in expr(), q in expr()) {
        let text = format!("dx = {p};\n# comment\ndy = {q};");
        let spec = parse_system(&text).unwrap();
        let printed = spec.print();
        let again = parse_system(&printed).unwrap();
        prop_assert_eq!(&again.p, &spec.p);
        prop_assert_eq!(&again.q, &spec.q);
        prop_assert_eq!(again.print(), printed);
    }
}

fn builtins() -> Vec<PlanarSystem> {
    let mut v = Vec::new();
    for o in [Orientation::Attracting, Orientation::Repelling] {
        for k in 1..=3 {
            v.push(make_weak_focus(k, o).unwrap());
            for n in 1..=3 {
                for lambda in [0.0, -0.04, 0.3] {
                    v.push(make_deg_nn(k, n, o, lambda).unwrap());
                }
                for m in n..=3 {
                    v.push(make_deg_mn(k, m, n, o).unwrap());
                }
            }
        }
    }
    for k in 0..=3 {
        for s in (2 * k + 2..=2 * k + 4).step_by(2) {
            v.push(make_homogeneous(k, &HomogeneousForm::scaled_rho_power(-1.0, s / 2)).unwrap());
            let coeffs: Vec<f64> = (0..=s).map(|i| 0.1 * i as f64 - 1.0 / 3.0).collect();
            v.push(make_homogeneous(k, &HomogeneousForm::new(s, coeffs)).unwrap());
        }
    }
    for n in 1..=3 {
        v.push(make_annulus(n).unwrap());
    }
    v
}

#[test]
fn builtin_families_render_and_parse_back() {
    for sys in builtins() {
        let text = render_system(&sys);
        let back = parse_system(&text)
            .unwrap_or_else(|e| panic!("{text}: {e}"))
            .to_system();
        assert_eq!(back.p, sys.p, "{:?} {:?}\n{text}", sys.family, sys.params);
        assert_eq!(back.q, sys.q, "{:?} {:?}\n{text}", sys.family, sys.params);
    }
}

#[test]
fn sign_factors_survive_rendering() {
    let sys = make_deg_nn(1, 2, Orientation::Attracting, 0.0).unwrap();
    let text = render_system(&sys);
    assert!(text.contains("sx*sy"), "{text}");
}
