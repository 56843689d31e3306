//! The symplectic `l_p`-sum `B_p(C^2)`, the toric domain under
//! `x^(p/2) + y^(p/2) = 1`.

use std::sync::Arc;

use num_rational::BigRational;

use crate::cremona::{Outcome, Verdict};
use crate::ech::{ellipsoid_capacity, union_capacity};
use crate::error::{domain, Error, Result};
use crate::numerics::beta;
use crate::param::PParam;
use crate::toric::{expand, BoundaryCurve, ExpansionOptions, ParabolaArc, PolylineCurve, ToricBoundary};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipsoid<S = f64> {
    pub a: S,
    pub b: S,
}

impl Ellipsoid<f64> {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return domain(format!("ellipsoid axes must be positive (got {a}, {b})"));
        }
        Ok(Ellipsoid { a, b })
    }

    /// Toric area `a b / 2`.
    pub fn area(&self) -> f64 {
        0.5 * self.a * self.b
    }
}

/// `x = u^(2/p), y = (1 - u)^(2/p)` for `u` in `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct LpSumCurve {
    pub p: f64,
}

impl BoundaryCurve for LpSumCurve {
    fn param_range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn position(&self, u: f64) -> Result<(f64, f64)> {
        let e = 2.0 / self.p;
        let u = u.clamp(0.0, 1.0);
        Ok((u.powf(e), (1.0 - u).powf(e)))
    }

    fn velocity(&self, u: f64) -> Result<(f64, f64)> {
        let e = 2.0 / self.p;
        if u > 0.0 && u < 1.0 {
            return Ok((e * u.powf(e - 1.0), -e * (1.0 - u).powf(e - 1.0)));
        }
        // Tangent directions at the two ends.
        let at_start = u <= 0.0;
        Ok(match (at_start, e.partial_cmp(&1.0)) {
            (_, Some(std::cmp::Ordering::Equal)) => (1.0, -1.0),
            (true, Some(std::cmp::Ordering::Less)) => (1.0, 0.0),
            (true, _) => (0.0, -e),
            (false, Some(std::cmp::Ordering::Less)) => (0.0, -1.0),
            (false, _) => (e, 0.0),
        })
    }

    fn symmetric(&self) -> bool {
        true
    }

    fn area(&self) -> Option<f64> {
        Some(beta(2.0 / self.p, 2.0 / self.p) / self.p)
    }

    fn argmin_linear(&self, alpha: f64, beta_: f64, lo: f64, hi: f64) -> Option<f64> {
        if self.p == 1.0 {
            let s = beta_ / (alpha + beta_);
            // x = u^2: the unit-parabola arc, with argmin in closed form.
            return Some(s.clamp(lo, hi));
        }
        None
    }
}

pub fn bp_boundary(p: PParam, n_samples: usize) -> Result<ToricBoundary> {
    match p {
        PParam::Infinite => ToricBoundary::new(
            Arc::new(PolylineCurve::new(vec![(0.0, 1.0), (1.0, 1.0), (1.0, 0.0)])?),
            n_samples,
        ),
        PParam::Finite(pv) if pv == 2.0 => {
            ToricBoundary::new(Arc::new(PolylineCurve::new(vec![(0.0, 1.0), (1.0, 0.0)])?), n_samples)
        }
        PParam::Finite(pv) => ToricBoundary::new(Arc::new(LpSumCurve { p: pv }), n_samples),
    }
}

/// Validates a raw exponent for the symplectic sum; `p <= 0` and `p < 1`
/// are rejected.
pub fn bp_param(p: f64) -> Result<PParam> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("exponent must be positive (got {p})")));
    }
    PParam::new(p)
}

pub fn bp_inner_radius(p: PParam) -> f64 {
    match p {
        PParam::Infinite => 1.0,
        PParam::Finite(p) => 2f64.powf(1.0 - 2.0 / p).min(1.0),
    }
}

pub fn bp_outer_radius(p: PParam) -> f64 {
    match p {
        PParam::Infinite => 2.0,
        PParam::Finite(p) if p >= 2.0 => 2f64.powf(1.0 - 2.0 / p),
        PParam::Finite(p) => (1.0 + 2f64.powf(p / (p - 2.0))).powf(1.0 - 2.0 / p),
    }
}

/// Toric area `(1/p) B(2/p, 2/p)`.
pub fn bp_volume(p: PParam) -> f64 {
    match p {
        PParam::Infinite => 1.0,
        PParam::Finite(p) => beta(2.0 / p, 2.0 / p) / p,
    }
}

/// `x_{-1/n}` of `B_p` in closed form, for `1 <= p < 2`.
pub fn bp_tangent_intercept(p: f64, n: u32) -> f64 {
    let t = (n as f64).powf(p / (2.0 - p));
    (t / (1.0 + t)).powf((2.0 - p) / p)
}

/// The first `count` weights of `B_1`.
pub fn b1_weights(count: usize) -> Vec<BigRational> {
    if count == 0 {
        return Vec::new();
    }
    let arc = ParabolaArc::<BigRational>::unit();
    let mut cutoff = BigRational::new(1.into(), 40.into());
    loop {
        let ex = expand(&arc, &ExpansionOptions::with_min_weight(cutoff.clone()))
            .expect("parabola expansion with a positive cutoff");
        // Every weight at or above the cutoff is kept, so the largest
        // `count` kept weights are the largest overall.
        if ex.entries.len() >= count {
            return ex.weights().into_iter().take(count).collect();
        }
        cutoff = cutoff / BigRational::from_integer(2.into());
    }
}

/// Closed-form test for `B_1 -> E(a, b)`, with a capacity cross-check.
///
/// Returns [`Error::Inconsistent`] if the closed form claims an embedding
/// while some `c_k`, `k <= k_max`, of the truncated union of `n_weights`
/// balls exceeds that of the ellipsoid.
pub fn b1_into_ellipsoid(e: Ellipsoid<f64>, k_max: usize, n_weights: usize) -> Result<Verdict<f64>> {
    let (lo, hi) = if e.a <= e.b { (e.a, e.b) } else { (e.b, e.a) };
    let closed = lo >= 0.5 && hi >= 2.0 / 3.0;
    let weights: Vec<f64> = b1_weights(n_weights).iter().map(|w| num_traits::ToPrimitive::to_f64(w).unwrap()).collect();
    let mut worst: Option<(usize, f64, f64)> = None;
    for k in 1..=k_max {
        let cu = union_capacity(&weights, k)?;
        let ce = ellipsoid_capacity(&e.a, &e.b, k)?;
        if cu > ce * (1.0 + 1e-12) && worst.is_none() {
            worst = Some((k, cu, ce));
        }
    }
    if closed {
        if let Some((k, cu, ce)) = worst {
            return Err(Error::Inconsistent(format!(
                "closed form says B_1 embeds in E({}, {}) but c_{k}: {cu} > {ce}",
                e.a, e.b
            )));
        }
        return Ok(Verdict {
            outcome: Outcome::Embeddable,
            trace: Vec::new(),
            reason: format!("min(a, b) = {lo} >= 1/2 and max(a, b) = {hi} >= 2/3; capacities agree up to k = {k_max}"),
            padded: false,
        });
    }
    let reason = match worst {
        Some((k, cu, ce)) => format!("closed form fails; obstructed by c_{k}: {cu} > {ce}"),
        None if lo < 0.5 => format!("min(a, b) = {lo} < 1/2"),
        None => format!("max(a, b) = {hi} < 2/3"),
    };
    Ok(Verdict { outcome: Outcome::NotEmbeddable, trace: Vec::new(), reason, padded: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn radii_and_volume() {
        assert_eq!(bp_inner_radius(PParam::Finite(1.0)), 0.5);
        assert_eq!(bp_inner_radius(PParam::Finite(2.0)), 1.0);
        assert_eq!(bp_inner_radius(PParam::Infinite), 1.0);
        assert!((bp_outer_radius(PParam::Finite(1.0)) - 2.0 / 3.0).abs() < 1e-15);
        assert!((bp_outer_radius(PParam::Finite(2.0)) - 1.0).abs() < 1e-15);
        assert!((bp_outer_radius(PParam::Finite(2.0 - 1e-9)) - 1.0).abs() < 1e-6);
        assert_eq!(bp_outer_radius(PParam::Infinite), 2.0);
        assert!((bp_volume(PParam::Finite(1.0)) - 1.0 / 6.0).abs() < 1e-14);
        assert!((bp_volume(PParam::Finite(2.0)) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn weights_exact() {
        assert_eq!(b1_weights(1), vec![q(1, 2)]);
        let w = b1_weights(11);
        let expect = vec![q(1, 2), q(1, 6), q(1, 6), q(1, 12), q(1, 12), q(1, 20), q(1, 20), q(1, 30), q(1, 30), q(1, 30), q(1, 30)];
        assert_eq!(w, expect);
        assert_eq!(b1_weights(20).len(), 20);
    }

    #[test]
    fn boundary_shapes() {
        use crate::toric::Shape;
        let b1 = bp_boundary(PParam::Finite(1.0), 513).unwrap();
        assert_eq!(b1.shape(), Shape::Concave);
        assert!((b1.x_intercept() - 1.0).abs() < 1e-15);
        let d = b1.position(b1.diagonal_param().unwrap()).unwrap();
        assert!((d.0 - 0.25).abs() < 1e-15 && (d.1 - 0.25).abs() < 1e-15);
        assert!(bp_boundary(PParam::Finite(2.0), 64).unwrap().is_degenerate());
        assert_eq!(bp_boundary(PParam::Finite(4.0), 513).unwrap().shape(), Shape::Convex);
        assert_eq!(bp_boundary(PParam::Infinite, 64).unwrap().shape(), Shape::Convex);
        assert!(bp_param(0.0).is_err() && bp_param(-1.0).is_err() && bp_param(0.5).is_err());
    }

    #[test]
    fn ellipsoid_examples() {
        let ok = b1_into_ellipsoid(Ellipsoid::new(0.5, 2.0 / 3.0).unwrap(), 50, 11).unwrap();
        assert_eq!(ok.outcome, Outcome::Embeddable);
        for (a, b) in [(0.49, 10.0), (0.6, 0.6)] {
            let v = b1_into_ellipsoid(Ellipsoid::new(a, b).unwrap(), 50, 11).unwrap();
            assert_eq!(v.outcome, Outcome::NotEmbeddable, "{a} {b}");
        }
    }
}
