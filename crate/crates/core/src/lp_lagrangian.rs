//! Analytic quantities of the Lagrangian `l_p`-sum `X_p` of two discs.
//!
//! The domain is symplectomorphic to the toric domain bounded by the curve
//! `v -> (2 pi v + g_p(v), g_p(v))` for `v >= 0` and its reflection in the
//! diagonal for `v < 0`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::dynamics::r_pm;
use crate::error::{domain, Error, Result};
use crate::numerics::{area_lp, beta, find_root_with_values, integrate, QuadratureSpec};
use crate::param::PParam;
use crate::toric::{BoundaryCurve, ToricBoundary};

const G_TOL: f64 = 1e-12;
const ROOT_TOL: f64 = 1e-14;
// Half-width in ln(x) beyond the bump of the g' integrand; the tails
// contribute below exp(-Y_MARGIN).
const Y_MARGIN: f64 = 42.0;

/// Area `A(p)` of the unit disc of the `l_p` norm on the plane.
pub fn area_p(p: PParam) -> f64 {
    match p {
        PParam::Finite(p) => area_lp(p),
        PParam::Infinite => 4.0,
    }
}

/// Right end `4^(-1/p)` of the domain of `g_p` (`1` for `p = inf`).
pub fn v_max(p: PParam) -> f64 {
    match p {
        PParam::Finite(p) => 0.25f64.powf(1.0 / p),
        PParam::Infinite => 1.0,
    }
}

fn check_v(p: PParam, v: f64) -> Result<()> {
    let m = v_max(p);
    if !(0.0..=m).contains(&v) {
        return domain(format!("v = {v} outside [0, {m}] for p = {p}"));
    }
    Ok(())
}

/// `g_p(v) = 2 \int_{r_-}^{r_+} sqrt((1 - r^p)^(2/p) - v^2 / r^2) dr`.
pub fn g(p: PParam, v: f64) -> Result<f64> {
    check_v(p, v)?;
    let p = match p {
        PParam::Infinite => return Ok(2.0 * ((1.0 - v * v).max(0.0).sqrt() - v * v.min(1.0).acos())),
        PParam::Finite(p) => p,
    };
    if v == v_max(PParam::Finite(p)) {
        return Ok(0.0);
    }
    let (lo, hi) = r_pm(PParam::Finite(p), v)?;
    if hi <= lo {
        return Ok(0.0);
    }
    let vv = v * v;
    let f = move |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        let outer = (1.0 - r.powf(p)).max(0.0).powf(2.0 / p);
        let s = if vv == 0.0 { outer } else { outer - vv / (r * r) };
        if s > 0.0 {
            2.0 * s.sqrt()
        } else {
            0.0
        }
    };
    let spec = QuadratureSpec::new(lo, hi).tolerances(G_TOL, G_TOL).singular(v > 0.0, true);
    integrate(f, &spec)
}

/// Limits of `g_p'` at the two ends of its domain.
pub fn g_prime_limits(p: PParam) -> (f64, f64) {
    match p {
        PParam::Finite(p) => (-PI, -(2.0 / p).sqrt() * PI),
        PParam::Infinite => (-PI, 0.0),
    }
}

/// `g_p'(v)` for `v` strictly inside `(0, 4^(-1/p))`.
pub fn g_prime(p: PParam, v: f64) -> Result<f64> {
    check_v(p, v)?;
    let m = v_max(p);
    if v == 0.0 || v == m {
        return Err(Error::Domain(format!(
            "g' is defined at the endpoint v = {v} only as a limit; use g_prime_limits"
        )));
    }
    let p = match p {
        PParam::Infinite => return Ok(-2.0 * v.acos()),
        PParam::Finite(p) => p,
    };
    let vp = v.powf(p);
    let q = 0.25 - vp;
    if q <= 0.0 {
        return Ok(g_prime_limits(PParam::Finite(p)).1);
    }
    let e = 2.0 / p;
    let ln_q = q.ln();
    let ln_vp = p * v.ln();
    // In x = exp(y) the integrand is a smooth bump: it grows like exp(e y)
    // up to y ~ ln(v^p) / 2 and decays like exp(-y) beyond y ~ 0.
    let f = move |y: f64| {
        let ln_den = log_add_exp(ln_vp, 2.0 * y);
        let ln_um1 = ln_q - ln_den;
        let ln_ratio = if ln_um1 < -20.0 {
            // (u - 1) / (u^e - 1) = (1 - (e - 1) (u - 1) / 2 + ...) / e
            -e.ln() - 0.5 * (e - 1.0) * ln_um1.exp()
        } else {
            let eu = e * log_add_exp(0.0, ln_um1);
            let ln_d = if eu > 30.0 { eu + (-(-eu).exp()).ln_1p() } else { eu.exp_m1().ln() };
            ln_um1 - ln_d
        };
        (0.5 * ln_ratio + y).exp() / (0.25 + (2.0 * y).exp())
    };
    let y_lo = 0.5 * ln_vp.min(0.0) - Y_MARGIN;
    let spec = QuadratureSpec::new(y_lo, Y_MARGIN).tolerances(G_TOL, G_TOL);
    Ok(-e * integrate(f, &spec)?)
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// The `v` with `g_p'(v) = s`.
///
/// `g_p'` is increasing for `p > 2`, decreasing for `p < 2`, and constant
/// (`-pi`) for `p = 2`.
pub fn g_prime_inverse(p: PParam, s: f64) -> Result<f64> {
    let (l0, l1) = g_prime_limits(p);
    let m = v_max(p);
    if let PParam::Finite(pv) = p {
        if pv == 2.0 {
            return Err(Error::NotInjective("g_2' is identically -pi".into()));
        }
    }
    let (lo_s, hi_s) = if l0 <= l1 { (l0, l1) } else { (l1, l0) };
    if !(lo_s..=hi_s).contains(&s) {
        return Err(Error::NotAttained(format!("{s} outside the image [{lo_s}, {hi_s}] of g' for p = {p}")));
    }
    if s == l0 {
        return Ok(0.0);
    }
    if s == l1 {
        return Ok(m);
    }
    if let PParam::Infinite = p {
        return Ok((-s / 2.0).cos());
    }
    let f = |v: f64| g_prime(p, v).map(|d| d - s).unwrap_or(f64::NAN);
    find_root_with_values(f, 0.0, m, l0 - s, l1 - s, ROOT_TOL)
}

/// Area of `Omega_p`, equal to the 4-volume of `X_p`:
/// `(2 pi^2 / p) B(2/p, 1 + 2/p)`, and `pi^2` for `p = inf`.
pub fn omega_area(p: PParam) -> f64 {
    match p {
        PParam::Finite(p) => 2.0 * PI * PI / p * beta(2.0 / p, 1.0 + 2.0 / p),
        PParam::Infinite => PI * PI,
    }
}

/// The boundary curve of `Omega_p`, parametrized by `v` in
/// `[-4^(-1/p), 4^(-1/p)]`.
#[derive(Debug, Clone, Copy)]
pub struct LagrangianCurve {
    pub p: PParam,
}

impl LagrangianCurve {
    fn g_prime_at(&self, w: f64) -> Result<f64> {
        let (l0, l1) = g_prime_limits(self.p);
        if w <= 0.0 {
            Ok(l0)
        } else if w >= v_max(self.p) {
            Ok(l1)
        } else {
            g_prime(self.p, w)
        }
    }
}

impl BoundaryCurve for LagrangianCurve {
    fn param_range(&self) -> (f64, f64) {
        let m = v_max(self.p);
        (-m, m)
    }

    fn position(&self, v: f64) -> Result<(f64, f64)> {
        let w = v.abs().min(v_max(self.p));
        let gv = g(self.p, w)?;
        if v >= 0.0 {
            Ok((2.0 * PI * w + gv, gv))
        } else {
            Ok((gv, 2.0 * PI * w + gv))
        }
    }

    fn velocity(&self, v: f64) -> Result<(f64, f64)> {
        let d = self.g_prime_at(v.abs())?;
        if v >= 0.0 {
            Ok((2.0 * PI + d, d))
        } else {
            Ok((-d, -2.0 * PI - d))
        }
    }

    fn symmetric(&self) -> bool {
        true
    }

    fn area(&self) -> Option<f64> {
        Some(omega_area(self.p))
    }
}

/// Samples of `Omega_p`'s boundary with closed-form evaluators attached.
pub fn boundary_curve(p: PParam, n_samples: usize) -> Result<ToricBoundary> {
    if n_samples < 3 {
        return domain(format!("need at least 3 samples (got {n_samples})"));
    }
    ToricBoundary::new(Arc::new(LagrangianCurve { p }), n_samples)
}

/// Branch formulas of the radii, evaluable on either side of a transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusBranch {
    /// `2 pi 4^(-1/p)`
    Vertex,
    /// `A(p)`
    Area,
    /// `2 pi v0 + 3 g_p(v0)` with `g_p'(v0) = -2 pi / 3`
    Tangent,
}

pub fn radius_branch(p: PParam, branch: RadiusBranch) -> Result<f64> {
    match branch {
        RadiusBranch::Vertex => Ok(2.0 * PI * v_max(p)),
        RadiusBranch::Area => Ok(area_p(p)),
        RadiusBranch::Tangent => {
            if let PParam::Infinite = p {
                return Ok(3.0 * 3f64.sqrt());
            }
            let v0 = g_prime_inverse(p, -2.0 * PI / 3.0)?;
            Ok(2.0 * PI * v0 + 3.0 * g(p, v0)?)
        }
    }
}

/// Symplectic inner radius of `X_p`.
pub fn inner_radius(p: PParam) -> f64 {
    match p {
        PParam::Infinite => 4.0,
        PParam::Finite(pv) if pv <= 2.0 => 2.0 * PI * v_max(p),
        PParam::Finite(_) => area_p(p),
    }
}

/// Symplectic outer radius of `X_p`.
pub fn outer_radius(p: PParam) -> Result<f64> {
    match p {
        PParam::Infinite => Ok(3.0 * 3f64.sqrt()),
        PParam::Finite(pv) if pv <= 2.0 => Ok(area_p(p)),
        PParam::Finite(pv) if pv <= 4.5 => Ok(2.0 * PI * v_max(p)),
        PParam::Finite(_) => radius_branch(p, RadiusBranch::Tangent),
    }
}
