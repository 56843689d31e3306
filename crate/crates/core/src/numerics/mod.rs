//! Quadrature, root finding, limit extrapolation and special functions.

pub mod quadrature;
pub mod root;
pub mod special;

pub use quadrature::{
    integrate, integrate_semi_infinite, integrate_with_estimate, Estimate, QuadratureSpec,
};
pub use root::{find_root_monotone, find_root_with_values};
pub use special::{area_lp, beta, gamma};

/// Estimates `lim f(x)` as `x -> target` from the side of `target + h0`.
///
/// Samples `f` at `target + h0 / 2^k` and applies repeated Aitken
/// extrapolation to the sequence, which removes a leading power-law error
/// term in the step.
pub fn extrapolate_limit<G: Fn(f64) -> f64>(f: G, target: f64, h0: f64, levels: usize) -> f64 {
    let levels = levels.max(3);
    let mut seq: Vec<f64> = (0..levels)
        .map(|k| f(target + h0 / f64::powi(2.0, k as i32)))
        .collect();
    while seq.len() >= 3 {
        let mut next = Vec::with_capacity(seq.len() - 2);
        for w in seq.windows(3) {
            let (x0, x1, x2) = (w[0], w[1], w[2]);
            let denom = (x2 - x1) - (x1 - x0);
            if denom.abs() <= 1e-300 || !denom.is_finite() {
                next.push(x2);
            } else {
                next.push(x2 - (x2 - x1) * (x2 - x1) / denom);
            }
        }
        if next.len() < 3 {
            return *next.last().unwrap();
        }
        seq = next;
    }
    *seq.last().unwrap()
}
