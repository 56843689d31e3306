//! The Hamiltonian `H_p = |x|^p + |y|^p` on `R^2 x R^2`, its angular
//! momentum integral, and an independent evaluation of the action `g_p`.

use crate::error::{domain, Result};
use crate::numerics::{integrate, QuadratureSpec};
use crate::param::PParam;

/// Guard radius: trajectories are cut when `|x|` or `|y|` gets this small.
pub const AXIS_GUARD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x: [f64; 2],
    pub y: [f64; 2],
}

impl PhasePoint {
    pub fn new(x: [f64; 2], y: [f64; 2]) -> Self {
        PhasePoint { x, y }
    }

    fn axpy(&self, h: f64, d: &PhasePoint) -> PhasePoint {
        PhasePoint {
            x: [self.x[0] + h * d.x[0], self.x[1] + h * d.x[1]],
            y: [self.y[0] + h * d.y[0], self.y[1] + h * d.y[1]],
        }
    }
}

fn norm(v: &[f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

pub fn hamiltonian(p: PParam, z: &PhasePoint) -> f64 {
    let (a, b) = (norm(&z.x), norm(&z.y));
    match p {
        PParam::Finite(p) => a.powf(p) + b.powf(p),
        PParam::Infinite => a.max(b),
    }
}

pub fn angular_momentum(z: &PhasePoint) -> f64 {
    z.y[0] * z.x[1] - z.y[1] * z.x[0]
}

// Hamiltonian vector field: x' = dH/dy, y' = -dH/dx.
fn vector_field(p: f64, z: &PhasePoint) -> PhasePoint {
    let (a, b) = (norm(&z.x), norm(&z.y));
    let ca = p * a.powf(p - 2.0);
    let cb = p * b.powf(p - 2.0);
    PhasePoint { x: [cb * z.y[0], cb * z.y[1]], y: [-ca * z.x[0], -ca * z.x[1]] }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhasePoint>,
    /// The run stopped early because the orbit came within [`AXIS_GUARD`] of
    /// an axis `x = 0` or `y = 0`.
    pub truncated: bool,
}

impl Trajectory {
    pub fn max_deviation<F: Fn(&PhasePoint) -> f64>(&self, f: F) -> f64 {
        let f0 = f(&self.states[0]);
        self.states.iter().map(|s| (f(s) - f0).abs()).fold(0.0, f64::max)
    }
}

/// Classical fourth-order Runge-Kutta with fixed step `dt`.
pub fn integrate_flow(p: PParam, z0: PhasePoint, t_end: f64, dt: f64) -> Result<Trajectory> {
    let p = match p {
        PParam::Finite(p) if p >= 2.0 => p,
        _ => return domain("flow integration needs a finite p >= 2"),
    };
    if !(dt > 0.0) || !(t_end >= 0.0) {
        return domain("dt must be positive and t_end non-negative");
    }
    let steps = (t_end / dt).round() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut z = z0;
    times.push(0.0);
    states.push(z);
    let near_axis = |z: &PhasePoint| norm(&z.x) < AXIS_GUARD || norm(&z.y) < AXIS_GUARD;
    if near_axis(&z) {
        return Ok(Trajectory { times, states, truncated: true });
    }
    for i in 1..=steps {
        let k1 = vector_field(p, &z);
        let k2 = vector_field(p, &z.axpy(0.5 * dt, &k1));
        let k3 = vector_field(p, &z.axpy(0.5 * dt, &k2));
        let k4 = vector_field(p, &z.axpy(dt, &k3));
        let mut next = z;
        for j in 0..2 {
            next.x[j] += dt / 6.0 * (k1.x[j] + 2.0 * k2.x[j] + 2.0 * k3.x[j] + k4.x[j]);
            next.y[j] += dt / 6.0 * (k1.y[j] + 2.0 * k2.y[j] + 2.0 * k3.y[j] + k4.y[j]);
        }
        if near_axis(&next) {
            return Ok(Trajectory { times, states, truncated: true });
        }
        z = next;
        times.push(i as f64 * dt);
        states.push(z);
    }
    Ok(Trajectory { times, states, truncated: false })
}

/// Exact flow of `H_2`: rotation with angular speed 2 in each `(x_j, y_j)` plane.
pub fn harmonic_solution(z0: &PhasePoint, t: f64) -> PhasePoint {
    let (s, c) = (2.0 * t).sin_cos();
    PhasePoint {
        x: [z0.x[0] * c + z0.y[0] * s, z0.x[1] * c + z0.y[1] * s],
        y: [-z0.x[0] * s + z0.y[0] * c, -z0.x[1] * s + z0.y[1] * c],
    }
}

/// Roots `r_- <= r_+` of `r^2 (1 - r^p)^(2/p) = v^2` on `[0, 1]`.
pub fn r_pm(p: PParam, v: f64) -> Result<(f64, f64)> {
    let p = match p {
        PParam::Finite(p) => p,
        PParam::Infinite => {
            if !(0.0..=1.0).contains(&v) {
                return domain(format!("v = {v} outside [0, 1]"));
            }
            return Ok((v, 1.0));
        }
    };
    let m = 0.25f64.powf(1.0 / p);
    if !(0.0..=m).contains(&v) {
        return domain(format!("v = {v} outside [0, {m}] for p = {p}"));
    }
    let vp = v.powf(p);
    let disc = (0.25 - vp).max(0.0).sqrt();
    let hi = (0.5 + disc).powf(1.0 / p);
    // r_- r_+ = v, which avoids both the cancellation in 1/2 - disc and the
    // underflow of v^p for large p.
    let lo = (v / hi).min(hi);
    Ok((lo, hi))
}

/// The action `2 \int_{r_-}^{r_+} sqrt((1 - r^p)^(2/p) - v^2/r^2) dr`
/// computed in the angle variable `r = m - h cos(theta)`.
pub fn action_oracle(p: PParam, v: f64) -> Result<f64> {
    let (lo, hi) = r_pm(p, v)?;
    let pv = match p {
        PParam::Finite(p) => p,
        PParam::Infinite => {
            return Ok(2.0 * ((1.0 - v * v).max(0.0).sqrt() - v * v.acos()));
        }
    };
    if hi <= lo {
        return Ok(0.0);
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let vv = v * v;
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let r = mid - half * c;
        if r <= 0.0 {
            return 0.0;
        }
        let w = (1.0 - r.powf(pv)).max(0.0).powf(2.0 / pv) - vv / (r * r);
        if w <= 0.0 {
            0.0
        } else {
            2.0 * w.sqrt() * half * s
        }
    };
    let spec = QuadratureSpec::new(0.0, std::f64::consts::PI).tolerances(1e-12, 1e-12);
    integrate(f, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn formulas() {
        let z = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        assert_eq!(hamiltonian(PParam::Finite(2.0), &z), 2.0);
        assert_eq!(angular_momentum(&z), -1.0);
        let w = PhasePoint::new([0.5, 0.0], [0.5, 0.0]);
        assert!((hamiltonian(PParam::Finite(4.0), &w) - 0.125).abs() < 1e-15);
        assert_eq!(angular_momentum(&w), 0.0);
    }

    #[test]
    fn roots_residual() {
        for &p in &[1.0, 2.5, 6.0] {
            let m = 0.25f64.powf(1.0 / p);
            for k in 0..=10 {
                let v = m * k as f64 / 10.0;
                let (a, b) = r_pm(PParam::Finite(p), v).unwrap();
                assert!(a <= b);
                for r in [a, b] {
                    let res = r * r * (1.0 - r.powf(p)).powf(2.0 / p) - v * v;
                    assert!(res.abs() < 1e-12, "p={p} v={v} r={r}: {res}");
                }
                assert!((a.powf(p) + b.powf(p) - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(r_pm(PParam::Finite(3.0), 0.0).unwrap(), (0.0, 1.0));
        assert!(r_pm(PParam::Finite(3.0), 0.9).is_err());
    }

    #[test]
    fn oracle_values() {
        let v = action_oracle(PParam::Finite(2.0), 0.1).unwrap();
        assert!((v - (PI / 2.0 - PI / 10.0)).abs() < 1e-10);
    }

    #[test]
    fn guard_truncates() {
        let z = PhasePoint::new([1e-4, 0.0], [1.0, 0.0]);
        let t = integrate_flow(PParam::Finite(4.0), z, 1.0, 1e-3).unwrap();
        assert!(t.truncated);
        assert!(integrate_flow(PParam::Finite(1.5), z, 1.0, 1e-3).is_err());
    }
}
