mod common;

use lpsum::cremona::{cremona_transform, pack_decision, Outcome, PackingVector};
use lpsum::ech::{ball_capacity, ellipsoid_capacity, union_capacity};
use lpsum::lp_lagrangian::{g, v_max};
use lpsum::numerics::{integrate, QuadratureSpec};
use lpsum::symplectic_lp::{bp_boundary, bp_inner_radius, bp_outer_radius, bp_volume};
use lpsum::toric::tangent_intercept;
use lpsum::{PParam, Rational};
use proptest::prelude::*;

fn rational(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|d| (1..=d).prop_map(move |n| Rational::new(n.into(), d.into())))
}

fn spec(a: f64, b: f64) -> QuadratureSpec<f64> {
    QuadratureSpec::new(a, b).tolerances(1e-13, 1e-13)
}

proptest! {
    #[test]
    fn quadrature_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, k in 0.5f64..4.0) {
        let f = |x: f64| (k * x).sin();
        let h = |x: f64| x * x * (-x).exp();
        let lhs = integrate(|x| a * f(x) + b * h(x), &spec(0.0, 2.0)).unwrap();
        let rhs = a * integrate(f, &spec(0.0, 2.0)).unwrap() + b * integrate(h, &spec(0.0, 2.0)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + lhs.abs()));
    }

    #[test]
    fn quadrature_is_additive(m in 0.01f64..0.99) {
        // sqrt(x(1-x)) has square-root endpoints, as in the g_p integrals.
        let f = |x: f64| (x * (1.0 - x)).max(0.0).sqrt();
        let whole = integrate(f, &spec(0.0, 1.0).singular(true, true)).unwrap();
        let left = integrate(f, &spec(0.0, m).singular(true, false)).unwrap();
        let right = integrate(f, &spec(m, 1.0).singular(false, true)).unwrap();
        prop_assert!((whole - left - right).abs() <= 1e-12);
        prop_assert!((whole - std::f64::consts::PI / 8.0).abs() <= 1e-12);
    }

    #[test]
    fn cremona_transform_is_an_involution(c in rational(20), tail in prop::collection::vec(rational(20), 3..7)) {
        let v = PackingVector::new(c, tail);
        prop_assert_eq!(cremona_transform(&cremona_transform(&v)), v);
    }

    #[test]
    fn two_balls_match_the_sum_rule(c in rational(12), a in rational(12), b in rational(12)) {
        let verdict = pack_decision(c.clone(), vec![a.clone(), b.clone()], 10_000, &Rational::from_integer(0.into()));
        let expect = if a + b <= c { Outcome::Embeddable } else { Outcome::NotEmbeddable };
        prop_assert_eq!(verdict.outcome, expect);
    }

    #[test]
    fn packing_is_monotone_in_the_target(
        c in rational(10),
        extra in rational(10),
        balls in prop::collection::vec(rational(10), 1..6),
    ) {
        let zero = Rational::from_integer(0.into());
        let small = pack_decision(c.clone(), balls.clone(), 10_000, &zero).outcome;
        let large = pack_decision(c + extra, balls, 10_000, &zero).outcome;
        prop_assert_ne!(small, Outcome::Inconclusive);
        prop_assert_ne!(large, Outcome::Inconclusive);
        if small == Outcome::Embeddable {
            prop_assert_eq!(large, Outcome::Embeddable);
        }
    }

    #[test]
    fn union_capacity_ignores_order(weights in prop::collection::vec(rational(9), 1..5), k in 0usize..8, seed in 0usize..24) {
        let mut perm = weights.clone();
        perm.rotate_left(seed % weights.len());
        if seed % 2 == 1 {
            perm.reverse();
        }
        prop_assert_eq!(union_capacity(&weights, k).unwrap(), union_capacity(&perm, k).unwrap());
    }

    #[test]
    fn ellipsoid_of_equal_axes_is_a_ball(a in rational(15), k in 0usize..40) {
        prop_assert_eq!(ellipsoid_capacity(&a, &a, k).unwrap(), ball_capacity(&a, k));
    }

    #[test]
    fn bp_grows_with_p(p in 1.0f64..20.0, dp in 0.01f64..5.0) {
        let (a, b) = (PParam::Finite(p), PParam::Finite(p + dp));
        prop_assert!(bp_inner_radius(a) <= bp_inner_radius(b) + 1e-15);
        prop_assert!(bp_outer_radius(a) <= bp_outer_radius(b) + 1e-12);
        prop_assert!(bp_volume(a) < bp_volume(b));
        prop_assert!(bp_inner_radius(a) <= bp_outer_radius(a));
    }

    #[test]
    fn g_is_decreasing_in_v(p in 1.0f64..12.0, s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let m = v_max(PParam::Finite(p));
        let (lo, hi) = if s < t { (s * m, t * m) } else { (t * m, s * m) };
        prop_assume!(hi - lo > 1e-6);
        prop_assert!(g(PParam::Finite(p), hi).unwrap() < g(PParam::Finite(p), lo).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bp_intercepts_match_closed_form(p in 1.05f64..1.95, n in 1u32..9) {
        let b = bp_boundary(PParam::Finite(p), 1024).unwrap();
        let x = tangent_intercept(&b, n).unwrap();
        let expect = common::bp_intercept(p, n as f64);
        prop_assert!((x - expect).abs() <= 1e-9, "p = {}, n = {}: {} vs {}", p, n, x, expect);
    }
}

#[test]
fn param_text_round_trip() {
    for s in ["1", "1.5", "9/2", "inf", "1000"] {
        let p: PParam = s.parse().unwrap();
        let back: PParam = p.to_string().parse().unwrap();
        assert_eq!(p, back, "{s}");
    }
    assert_eq!("9/2".parse::<PParam>().unwrap(), PParam::Finite(4.5));
    for bad in ["0.5", "-1", "nan", "x", "1/0"] {
        assert!(bad.parse::<PParam>().is_err(), "{bad}");
    }
}
