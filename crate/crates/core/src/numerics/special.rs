//! Gamma and Beta functions, and the area of the unit `l_p` disc.

use num_traits::{Float, FromPrimitive};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation of the Gamma function (g = 7, nine terms).
pub fn gamma<F: Float + FromPrimitive>(z: F) -> F {
    let half = F::from_f64(0.5).unwrap();
    let pi = F::from_f64(std::f64::consts::PI).unwrap();
    if z < half {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        return pi / ((pi * z).sin() * gamma(F::one() - z));
    }
    let z = z - F::one();
    let mut x = F::from_f64(LANCZOS[0]).unwrap();
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        x = x + F::from_f64(coef).unwrap() / (z + F::from_usize(i).unwrap());
    }
    let t = z + F::from_f64(LANCZOS_G).unwrap() + half;
    let sqrt_two_pi = F::from_f64((2.0 * std::f64::consts::PI).sqrt()).unwrap();
    sqrt_two_pi * t.powf(z + half) * (-t).exp() * x
}

/// Euler Beta function through Gamma.
pub fn beta<F: Float + FromPrimitive>(a: F, b: F) -> F {
    gamma(a) * gamma(b) / gamma(a + b)
}

/// `A(p) = 4 Gamma(1 + 1/p)^2 / Gamma(1 + 2/p)`, the area of the unit
/// `l_p` disc in the plane. Infinite `p` gives the square of area 4.
pub fn area_lp(p: f64) -> f64 {
    if p.is_infinite() {
        return 4.0;
    }
    let g1 = gamma(1.0 + 1.0 / p);
    4.0 * g1 * g1 / gamma(1.0 + 2.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn known_gamma_values() {
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(1.0), 1.0) < 1e-14);
        assert!(rel(gamma(1.5), PI.sqrt() / 2.0) < 1e-14);
        assert!(rel(gamma(2.0), 1.0) < 1e-14);
        assert!(rel(gamma(3.0), 2.0) < 1e-14);
        assert!(rel(gamma(5.0), 24.0) < 1e-13);
        // Gamma(1/3), Gamma(4/3) from tables.
        assert!(rel(gamma(1.0 / 3.0), 2.678_938_534_707_747_6) < 1e-13);
        assert!(rel(gamma(4.0 / 3.0), 0.892_979_511_569_249_2) < 1e-13);
    }

    #[test]
    fn recurrence_on_unit_window() {
        // Gamma(x + 1) = x Gamma(x) across [1, 3].
        for i in 0..=200 {
            let x = 1.0 + 2.0 * i as f64 / 200.0;
            assert!(rel(gamma(x + 1.0), x * gamma(x)) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn beta_values() {
        assert!(rel(beta(2.0, 2.0), 1.0 / 6.0) < 1e-14);
        assert!(rel(beta(1.0, 1.0), 1.0) < 1e-14);
        assert!(rel(beta(0.5, 0.5), PI) < 1e-13);
    }

    #[test]
    fn lp_areas() {
        assert!((area_lp(2.0) - PI).abs() < 1e-13);
        assert!((area_lp(1.0) - 2.0).abs() < 1e-13);
        assert_eq!(area_lp(f64::INFINITY), 4.0);
        assert!((area_lp(1000.0) - 4.0).abs() < 1e-3);
    }

    #[test]
    fn f32_gamma() {
        assert!((gamma(3.0f32) - 2.0).abs() < 1e-5);
    }
}
