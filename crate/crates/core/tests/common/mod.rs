//! Independent oracles for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// `ln Gamma(z)` for `z > 0`: shift up by recurrence, then the Stirling series.
pub fn ln_gamma(mut z: f64) -> f64 {
    let mut shift = 0.0;
    while z < 10.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let z2 = z * z;
    let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z * z2 * z2)
        - 1.0 / (1680.0 * z * z2 * z2 * z2);
    shift + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

/// `A(p) = 4 Gamma(1 + 1/p)^2 / Gamma(1 + 2/p)`.
pub fn lp_disc_area(p: f64) -> f64 {
    4.0 * (2.0 * ln_gamma(1.0 + 1.0 / p) - ln_gamma(1.0 + 2.0 / p)).exp()
}

pub fn vertex_radius(p: f64) -> f64 {
    2.0 * PI * 0.25f64.powf(1.0 / p)
}

/// `c_k(B(1))`: the least `d` with `d(d + 3)/2 >= k`.
pub fn ball_multiplier(k: usize) -> usize {
    (0..).find(|d| d * (d + 3) / 2 >= k).unwrap()
}

/// Simpson's rule on `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// Width of `B_p` along the slope `-1/n` line, from the closed tangent point.
pub fn bp_intercept(p: f64, n: f64) -> f64 {
    let t = n.powf(p / (2.0 - p));
    (t / (1.0 + t)).powf((2.0 - p) / p)
}

pub struct Timer(std::time::Instant);

impl Timer {
    pub fn start() -> Self {
        Timer(std::time::Instant::now())
    }

    pub fn secs(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// Prints the one-line summary and fails the test if anything failed or the
/// budget was exceeded.
pub fn report(criterion: u32, budget: f64, timer: &Timer, failures: &[String], summary: &str) {
    let secs = timer.secs();
    let ok = failures.is_empty() && secs < budget;
    println!(
        "criterion {criterion}: {} {summary} ({secs:.3} s, budget {budget} s)",
        if ok { "PASS" } else { "FAIL" }
    );
    for f in failures {
        println!("  - {f}");
    }
    assert!(failures.is_empty(), "criterion {criterion}: {} failing checks", failures.len());
    assert!(secs < budget, "criterion {criterion}: {secs:.3} s over budget");
}
