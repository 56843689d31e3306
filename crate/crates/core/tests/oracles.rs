mod common;

use std::collections::HashMap;
use std::f64::consts::PI;

use lpsum::cremona::lagrangian_wd;
use lpsum::ech::{concave_capacity, ellipsoid_capacity, union_capacity};
use lpsum::lp_lagrangian::{boundary_curve, g, g_prime, g_prime_inverse, omega_area, v_max};
use lpsum::numerics::{integrate, QuadratureSpec};
use lpsum::symplectic_lp::{b1_weights, bp_boundary};
use lpsum::toric::{subregion_tau, tangent_intercept, weight_expansion, ToricBoundary, DEFAULT_SAMPLES};
use lpsum::{PParam, Rational};
use num_traits::ToPrimitive;

fn fp(p: f64) -> PParam {
    PParam::Finite(p)
}

#[test]
fn g_is_the_integral_of_its_derivative() {
    for &p in &[1.0, 1.5, 3.0, 6.0, 10.0] {
        let m = v_max(fp(p));
        for k in 0..6 {
            let v = m * k as f64 / 6.0;
            let spec = QuadratureSpec::new(v, m).tolerances(1e-11, 1e-11).singular(false, true);
            let tail = integrate(|s| -g_prime(fp(p), s.min(m * (1.0 - 1e-15))).unwrap(), &spec).unwrap();
            let gv = g(fp(p), v).unwrap();
            assert!((tail - gv).abs() < 1e-8, "p = {p}, v = {v}: {tail} vs {gv}");
        }
    }
}

#[test]
fn g_prime_inverse_inverts() {
    for &p in &[1.5, 3.0, 6.0, 25.0] {
        let (l0, l1) = lpsum::lp_lagrangian::g_prime_limits(fp(p));
        for k in 1..10 {
            let s = l0 + (l1 - l0) * k as f64 / 10.0;
            let v = g_prime_inverse(fp(p), s).unwrap();
            assert!((g_prime(fp(p), v).unwrap() - s).abs() < 1e-9, "p = {p}, s = {s}");
        }
    }
    assert!(g_prime_inverse(fp(2.0), -2.0).is_err());
    assert!(g_prime_inverse(fp(6.0), -0.1).is_err());
}

fn mirror(address: &str) -> String {
    address.chars().map(|c| if c == '1' { '2' } else { '1' }).collect()
}

fn assert_mirror_symmetric(b: &ToricBoundary, label: &str) {
    for a in ["1", "11", "12", "111", "112", "121"] {
        let (x, y) = (subregion_tau(b, a).unwrap(), subregion_tau(b, &mirror(a)).unwrap());
        assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()), "{label}: tau({a}) = {x}, mirror {y}");
    }
    let ex = weight_expansion(b, 1e-3).unwrap();
    let by_address: HashMap<_, _> = ex.entries.iter().map(|e| (e.address.clone(), e.weight)).collect();
    for e in &ex.entries {
        if e.address.is_empty() {
            continue;
        }
        let other = by_address.get(&mirror(&e.address));
        assert!(
            other.is_some_and(|w| (w - e.weight).abs() <= 1e-9),
            "{label}: {} has weight {} but its mirror has {other:?}",
            e.address,
            e.weight
        );
    }
}

#[test]
fn weights_pair_up_on_symmetric_domains() {
    assert_mirror_symmetric(&boundary_curve(fp(3.0), DEFAULT_SAMPLES).unwrap(), "X_3");
    assert_mirror_symmetric(&boundary_curve(fp(8.0), DEFAULT_SAMPLES).unwrap(), "X_8");
    assert_mirror_symmetric(&bp_boundary(fp(1.5), DEFAULT_SAMPLES).unwrap(), "B_1.5");
}

#[test]
fn truncation_bound_shrinks_with_the_cutoff() {
    let b = boundary_curve(fp(3.0), DEFAULT_SAMPLES).unwrap();
    let area = omega_area(fp(3.0));
    let mut last = f64::INFINITY;
    for cut in [1e-1, 3e-2, 1e-2, 3e-3] {
        let ex = weight_expansion(&b, cut).unwrap();
        assert!((ex.area - area).abs() < 1e-8);
        assert!(ex.truncation_bound >= -1e-9 && ex.truncation_bound <= last + 1e-12, "cutoff {cut}");
        last = ex.truncation_bound;
    }
}

#[test]
fn w2_and_d_increase_with_p() {
    let ps = [4.6, 5.0, 6.0, 8.0, 12.5, 20.0, 100.0];
    let vals: Vec<(f64, f64)> = ps.iter().map(|&p| lagrangian_wd(fp(p)).unwrap()).collect();
    for (w, &p) in vals.windows(2).zip(&ps) {
        assert!(w[1].0 > w[0].0 && w[1].1 > w[0].1, "not increasing after p = {p}: {w:?}");
    }
    let (w2, d) = lagrangian_wd(PParam::Infinite).unwrap();
    let last = vals.last().unwrap();
    assert!(w2 >= last.0 && d >= last.1);
    assert!(lagrangian_wd(fp(4.5)).is_err());
}

#[test]
fn tangent_widths_match_the_parametrization() {
    // x_{-1/n} = 2 pi v + (n + 1) g(v) where g'(v) = -2 pi / (n + 1).
    for (p, ns) in [(6.0, 2..3), (20.0, 2..5), (100.0, 2..7)] {
        let b = boundary_curve(fp(p), DEFAULT_SAMPLES).unwrap();
        for n in ns {
            let v = g_prime_inverse(fp(p), -2.0 * PI / (n as f64 + 1.0)).unwrap();
            let expect = 2.0 * PI * v + (n as f64 + 1.0) * g(fp(p), v).unwrap();
            let got = tangent_intercept(&b, n).unwrap();
            assert!((got - expect).abs() < 1e-8, "p = {p}, n = {n}: {got} vs {expect}");
        }
    }
    let b = boundary_curve(PParam::Infinite, DEFAULT_SAMPLES).unwrap();
    for n in 1..8u32 {
        let k = n as f64 + 1.0;
        let expect = 2.0 * k * (PI / k).sin();
        let got = tangent_intercept(&b, n).unwrap();
        assert!((got - expect).abs() < 1e-8, "p = inf, n = {n}: {got} vs {expect}");
    }
}

#[test]
fn concave_bracket_contains_exact_b1_capacities() {
    let b = bp_boundary(fp(1.0), DEFAULT_SAMPLES).unwrap();
    let exact: Vec<f64> = b1_weights(60).iter().map(|w| w.to_f64().unwrap()).collect();
    for k in 1..=12 {
        let (lo, hi) = concave_capacity(&b, k, 1e-3).unwrap();
        let c = union_capacity(&exact, k).unwrap();
        assert!(lo <= c + 1e-9 && c <= hi + 1e-9, "k = {k}: {c} outside [{lo}, {hi}]");
        assert!((lo - c).abs() < 1e-9, "k = {k}: {lo} vs {c}");
    }
}

#[test]
fn ellipsoid_capacity_sequence() {
    let half = Rational::new(1.into(), 2.into());
    let one = Rational::from_integer(1.into());
    // Sorted values of m/2 + n: 0, 1/2, 1, 1, 3/2, 3/2, 2, 2, 2, 5/2, 5/2, 5/2.
    let expect = [0, 1, 2, 2, 3, 3, 4, 4, 4, 5, 5, 5];
    for (k, &e) in expect.iter().enumerate() {
        assert_eq!(ellipsoid_capacity(&half, &one, k).unwrap(), Rational::new(e.into(), 2.into()), "k = {k}");
        assert_eq!(ellipsoid_capacity(&one, &half, k).unwrap(), Rational::new(e.into(), 2.into()));
    }
    assert!(ellipsoid_capacity(&0.0, &1.0, 3).is_err());
}
