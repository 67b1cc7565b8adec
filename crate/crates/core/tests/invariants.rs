use std::f64::consts::PI;

use malmsten_core::closed_form::reflected_closed;
use malmsten_core::series::{coeff_a, j_n};
use malmsten_core::special::reflection_product;
use malmsten_core::{
    digamma, evaluate, kummer_partial, log_gamma, malmsten_closed, quad_eval, Angle, AngleClass,
    Error, KummerPoint, Method, QuadConfig, RouteConfig, Transform,
};
use proptest::prelude::*;

fn angle(p: f64) -> Angle {
    Angle::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_gamma_recurrence(x in 1e-2f64..1e2) {
        let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
        prop_assert!((lhs - x.ln()).abs() <= 1e-12, "x={x}");
    }

    #[test]
    fn reflection_residual(t in -0.49f64..0.49) {
        let (l, r) = reflection_product(t).unwrap();
        prop_assert!(((l - r) / r).abs() <= 1e-11);
    }

    #[test]
    fn digamma_is_log_gamma_derivative(x in 0.5f64..10.0) {
        let h = 1e-5;
        let fd = (log_gamma(x + h).unwrap() - log_gamma(x - h).unwrap()) / (2.0 * h);
        prop_assert!((digamma(x).unwrap() - fd).abs() <= 1e-6);
    }

    #[test]
    fn closed_form_is_even(p in 1e-3f64..3.1) {
        let a = malmsten_closed(angle(p)).unwrap().value;
        let b = malmsten_closed(angle(-p)).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn reflected_variant_agrees(p in -3.0f64..3.0) {
        prop_assume!(p.abs() > 1e-3);
        let a = reflected_closed(angle(p)).unwrap();
        let b = malmsten_closed(angle(p)).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
    }

    #[test]
    fn coefficients_bounded_and_consistent(p in -3.1f64..3.1, n in 0usize..=200) {
        prop_assume!(p.abs() > 1e-3);
        let w = coeff_a(n, angle(p)).unwrap();
        prop_assert!(w.residual() <= 1e-12 * (n + 1) as f64);
        prop_assert!(w.closed.abs() <= (n + 1) as f64 + 1e-9);
    }

    #[test]
    fn kummer_midpoint_exact(n in 1usize..5000) {
        let mid = KummerPoint::new(0.5).unwrap();
        prop_assert_eq!(kummer_partial(mid, n, false).unwrap(), 0.5 * PI.ln());
    }

    #[test]
    fn angle_domain(p in -10.0f64..10.0) {
        match Angle::new(p) {
            Ok(a) => {
                prop_assert!(p.abs() < PI);
                prop_assert_eq!(a.class() == AngleClass::Zero, p.abs() < 1e-6);
            }
            Err(e) => {
                prop_assert!(p.abs() >= PI);
                prop_assert!(matches!(e, Error::Domain(_)));
            }
        }
    }
}

#[test]
fn j_n_closed_form_vs_quadrature() {
    let cfg = QuadConfig::default();
    for transform in [Transform::ExpSubstitution, Transform::UnitDirect] {
        for n in 0..=20 {
            let q = malmsten_core::quad_jn(n, &cfg.with_transform(transform)).unwrap();
            assert!((q.value - j_n(n)).abs() <= 1e-10, "n={n} {transform:?}");
        }
    }
}

#[test]
fn representations_agree_on_grid() {
    let cfg = QuadConfig::default();
    for k in 0..30 {
        let p = -3.0 + 6.0 * (k as f64 + 0.5) / 30.0;
        let unit = quad_eval(angle(p), &cfg.with_transform(Transform::UnitDirect)).unwrap();
        let exp = quad_eval(angle(p), &cfg).unwrap();
        assert!(unit.converged && exp.converged);
        assert!((unit.value - exp.value).abs() <= 1e-10, "phi={p}");
    }
}

#[test]
fn every_route_agrees_at_generic_points() {
    let cfg = RouteConfig::default();
    for p in [-2.7, -0.9, -0.3, 0.3, 0.9, PI / 3.0, 2.0 * PI / 3.0, 2.7] {
        let reference = malmsten_closed(angle(p)).unwrap().value;
        for method in [
            Method::Series,
            Method::Kummer,
            Method::QuadExp,
            Method::QuadUnit,
        ] {
            let ev = evaluate(angle(p), method, &cfg).unwrap();
            assert_eq!(ev.method, method);
            assert!((ev.value - reference).abs() <= 1e-8, "phi={p} {method:?}");
        }
    }
}

#[test]
fn zero_band_routing() {
    let cfg = RouteConfig::default();
    let z = angle(5e-7);
    assert!(evaluate(z, Method::Closed, &cfg).is_ok());
    assert!(evaluate(z, Method::QuadExp, &cfg).is_ok());
    assert!(matches!(
        evaluate(z, Method::Series, &cfg),
        Err(Error::ZeroRedirect { .. })
    ));
    assert!(matches!(
        evaluate(z, Method::Kummer, &cfg),
        Err(Error::ZeroRedirect { .. })
    ));
    assert!(matches!(
        malmsten_closed(z),
        Err(Error::ZeroRedirect { .. })
    ));
}
