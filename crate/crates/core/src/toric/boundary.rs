//! Sampled boundary curves of two-dimensional toric domains.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{find_root_with_values, integrate, QuadratureSpec};

pub const DEFAULT_SAMPLES: usize = 4096;

/// Relative turning (sine of the angle between consecutive chords) below
/// which a vertex is treated as straight.
const TURN_TOL: f64 = 1e-6;

/// A parametrized curve from the y-axis to the x-axis in the first quadrant.
///
/// `position(t)` must run from a point on the y-axis at the lower end of
/// [`BoundaryCurve::param_range`] to a point on the x-axis at the upper end,
/// with `x` non-decreasing and `y` non-increasing.
pub trait BoundaryCurve: Send + Sync + fmt::Debug {
    fn param_range(&self) -> (f64, f64);
    fn position(&self, t: f64) -> Result<(f64, f64)>;
    fn velocity(&self, t: f64) -> Result<(f64, f64)>;

    /// Symmetric under `(x, y) -> (y, x)`, with `t -> lo + hi - t`.
    fn symmetric(&self) -> bool {
        false
    }

    /// Area of the region between the curve and the axes, when known in
    /// closed form.
    fn area(&self) -> Option<f64> {
        None
    }

    /// Exact minimizer of `alpha * x + beta * y` on `[lo, hi]`, if available.
    fn argmin_linear(&self, _alpha: f64, _beta: f64, _lo: f64, _hi: f64) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub shape: Shape,
    /// Every sampled vertex is straight: the boundary is a line segment.
    pub degenerate: bool,
}

#[derive(Clone)]
pub struct ToricBoundary {
    curve: Arc<dyn BoundaryCurve>,
    samples: Vec<CurvePoint>,
    classification: Classification,
}

impl fmt::Debug for ToricBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ToricBoundary")
            .field("curve", &self.curve)
            .field("samples", &self.samples.len())
            .field("classification", &self.classification)
            .finish()
    }
}

impl ToricBoundary {
    pub fn new(curve: Arc<dyn BoundaryCurve>, n_samples: usize) -> Result<Self> {
        if n_samples < 3 {
            return Err(Error::Domain(format!("need at least 3 samples (got {n_samples})")));
        }
        let samples = sample_curve(curve.as_ref(), n_samples)?;
        check_monotone(&samples)?;
        let (y0, xa) = (samples[0].x, samples[samples.len() - 1].y);
        if y0.abs() > 1e-9 || xa.abs() > 1e-9 {
            return Err(Error::Domain(
                "boundary must start on the y-axis and end on the x-axis".into(),
            ));
        }
        let classification = classify_samples(&samples)?;
        Ok(ToricBoundary { curve, samples, classification })
    }

    pub fn with_default_samples(curve: Arc<dyn BoundaryCurve>) -> Result<Self> {
        Self::new(curve, DEFAULT_SAMPLES)
    }

    pub fn curve(&self) -> &dyn BoundaryCurve {
        self.curve.as_ref()
    }

    pub fn samples(&self) -> &[CurvePoint] {
        &self.samples
    }

    pub fn shape(&self) -> Shape {
        self.classification.shape
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn is_degenerate(&self) -> bool {
        self.classification.degenerate
    }

    pub fn symmetric(&self) -> bool {
        self.curve.symmetric()
    }

    pub fn param_range(&self) -> (f64, f64) {
        self.curve.param_range()
    }

    /// Intercept with the x-axis.
    pub fn x_intercept(&self) -> f64 {
        self.samples[self.samples.len() - 1].x
    }

    /// Intercept with the y-axis.
    pub fn y_intercept(&self) -> f64 {
        self.samples[0].y
    }

    pub fn position(&self, t: f64) -> Result<(f64, f64)> {
        self.curve.position(t)
    }

    pub fn velocity(&self, t: f64) -> Result<(f64, f64)> {
        self.curve.velocity(t)
    }

    /// `dy/dx` at parameter `t`; `-inf` for a vertical tangent.
    pub fn slope(&self, t: f64) -> Result<f64> {
        let (vx, vy) = self.curve.velocity(t)?;
        if vx == 0.0 {
            return Ok(if vy < 0.0 { f64::NEG_INFINITY } else { 0.0 });
        }
        Ok(vy / vx)
    }

    /// Area enclosed by the curve and the coordinate axes.
    ///
    /// Uses the closed form of the curve when present and otherwise
    /// integrates `x dy` along the curve.
    pub fn area(&self) -> Result<f64> {
        if let Some(a) = self.curve.area() {
            return Ok(a);
        }
        let (lo, hi) = self.param_range();
        // Area = -\int x(t) y'(t) dt with y decreasing from the y-intercept to 0.
        let f = |t: f64| match (self.curve.position(t), self.curve.velocity(t)) {
            (Ok((x, _)), Ok((_, vy))) => -x * vy,
            _ => f64::NAN,
        };
        let spec = QuadratureSpec::new(lo, hi).tolerances(1e-11, 1e-11);
        integrate(f, &spec)
    }

    /// Parameter in `[lo, hi]` minimizing `alpha * x + beta * y`, together
    /// with the minimal value.
    pub fn argmin_linear(&self, alpha: f64, beta: f64, lo: f64, hi: f64) -> Result<(f64, f64)> {
        let phi = |x: f64, y: f64| alpha * x + beta * y;
        if let Some(t) = self.curve.argmin_linear(alpha, beta, lo, hi) {
            let (x, y) = self.curve.position(t)?;
            return Ok((t, phi(x, y)));
        }
        if hi <= lo {
            let (x, y) = self.curve.position(lo)?;
            return Ok((lo, phi(x, y)));
        }
        let (xl, yl) = self.curve.position(lo)?;
        let (xh, yh) = self.curve.position(hi)?;
        let mut cands: Vec<(f64, f64)> = Vec::with_capacity(self.samples.len() + 2);
        cands.push((lo, phi(xl, yl)));
        let start = self.samples.partition_point(|s| s.t <= lo);
        for s in &self.samples[start..] {
            if s.t >= hi {
                break;
            }
            cands.push((s.t, phi(s.x, s.y)));
        }
        cands.push((hi, phi(xh, yh)));
        let (imin, _) = cands
            .iter()
            .enumerate()
            .fold((0usize, f64::INFINITY), |acc, (i, c)| if c.1 < acc.1 { (i, c.1) } else { acc });
        let a = cands[imin.saturating_sub(1)].0;
        let b = cands[(imin + 1).min(cands.len() - 1)].0;
        let mut best = cands[imin];
        let h = |t: f64| match self.curve.velocity(t) {
            Ok((vx, vy)) => alpha * vx + beta * vy,
            Err(_) => f64::NAN,
        };
        let (ha, hb) = (h(a), h(b));
        if ha < 0.0 && hb > 0.0 {
            let tol = 1e-14 * (hi - lo).abs().max(1.0);
            if let Ok(t) = find_root_with_values(h, a, b, ha, hb, tol) {
                let (x, y) = self.curve.position(t)?;
                let v = phi(x, y);
                if v < best.1 {
                    best = (t, v);
                }
            }
        }
        Ok(best)
    }

    /// Parameter where the curve meets the diagonal `x = y`.
    pub fn diagonal_param(&self) -> Result<f64> {
        let (lo, hi) = self.param_range();
        if self.symmetric() {
            return Ok(0.5 * (lo + hi));
        }
        let f = |t: f64| match self.curve.position(t) {
            Ok((x, y)) => x - y,
            Err(_) => f64::NAN,
        };
        find_root_with_values(f, lo, hi, -self.y_intercept(), self.x_intercept(), 1e-14)
    }
}

fn sample_curve(curve: &dyn BoundaryCurve, n: usize) -> Result<Vec<CurvePoint>> {
    let (lo, hi) = curve.param_range();
    if !(hi > lo) {
        return Err(Error::Domain(format!("empty parameter range [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    let param = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
    let mut out = vec![CurvePoint { t: 0.0, x: 0.0, y: 0.0 }; n];
    if curve.symmetric() {
        let half = n.div_ceil(2);
        for i in 0..half {
            let t = param(i);
            let (x, y) = curve.position(t)?;
            out[i] = CurvePoint { t, x, y };
            let j = n - 1 - i;
            out[j] = CurvePoint { t: param(j), x: y, y: x };
        }
    } else {
        for (i, slot) in out.iter_mut().enumerate() {
            let t = param(i);
            let (x, y) = curve.position(t)?;
            *slot = CurvePoint { t, x, y };
        }
    }
    Ok(out)
}

fn check_monotone(samples: &[CurvePoint]) -> Result<()> {
    let scale = samples
        .iter()
        .fold(0.0f64, |m, s| m.max(s.x.abs()).max(s.y.abs()))
        .max(1e-300);
    let slack = 1e-10 * scale;
    for w in samples.windows(2) {
        if w[1].x < w[0].x - slack || w[1].y > w[0].y + slack {
            return Err(Error::Domain(format!(
                "boundary is not monotone near t = {}: x must increase and y decrease",
                w[0].t
            )));
        }
    }
    Ok(())
}

fn classify_samples(samples: &[CurvePoint]) -> Result<Classification> {
    let mut left = false;
    let mut right = false;
    let mut prev: Option<(f64, f64)> = None;
    for w in samples.windows(2) {
        let d = (w[1].x - w[0].x, w[1].y - w[0].y);
        let len = d.0.hypot(d.1);
        if len == 0.0 {
            continue;
        }
        if let Some(p) = prev {
            let plen = p.0.hypot(p.1);
            let s = (p.0 * d.1 - p.1 * d.0) / (plen * len);
            if s > TURN_TOL {
                left = true;
            } else if s < -TURN_TOL {
                right = true;
            }
        }
        prev = Some(d);
    }
    match (left, right) {
        (true, true) => Err(Error::MixedCurvature),
        // Counter-clockwise turning: the region under the curve is not convex.
        (true, false) => Ok(Classification { shape: Shape::Concave, degenerate: false }),
        (false, true) => Ok(Classification { shape: Shape::Convex, degenerate: false }),
        (false, false) => Ok(Classification { shape: Shape::Convex, degenerate: true }),
    }
}

/// Re-runs the curvature test on the stored samples.
pub fn classify(b: &ToricBoundary) -> Result<Classification> {
    classify_samples(&b.samples)
}

/// Piecewise-linear boundary through vertices from the y-axis to the x-axis,
/// parametrized by `t` in `[0, n - 1]` with vertex `i` at `t = i`.
#[derive(Debug, Clone)]
pub struct PolylineCurve {
    vertices: Vec<(f64, f64)>,
}

impl PolylineCurve {
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Domain("polyline needs at least two vertices".into()));
        }
        Ok(PolylineCurve { vertices })
    }

    fn segment(&self, t: f64) -> (usize, f64) {
        let n = self.vertices.len();
        let t = t.clamp(0.0, (n - 1) as f64);
        let i = (t.floor() as usize).min(n - 2);
        (i, t - i as f64)
    }
}

impl BoundaryCurve for PolylineCurve {
    fn param_range(&self) -> (f64, f64) {
        (0.0, (self.vertices.len() - 1) as f64)
    }

    fn position(&self, t: f64) -> Result<(f64, f64)> {
        let (i, s) = self.segment(t);
        let (a, b) = (self.vertices[i], self.vertices[i + 1]);
        Ok((a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1)))
    }

    fn velocity(&self, t: f64) -> Result<(f64, f64)> {
        let (i, _) = self.segment(t);
        let (a, b) = (self.vertices[i], self.vertices[i + 1]);
        Ok((b.0 - a.0, b.1 - a.1))
    }

    fn symmetric(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[n - 1 - i]);
            a.0 == b.1 && a.1 == b.0
        })
    }

    fn area(&self) -> Option<f64> {
        let mut pts = vec![(0.0, 0.0)];
        pts.extend(self.vertices.iter().rev().copied());
        let mut s = 0.0;
        for i in 0..pts.len() {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            s += a.0 * b.1 - a.1 * b.0;
        }
        Some(0.5 * s.abs())
    }

    fn argmin_linear(&self, alpha: f64, beta: f64, lo: f64, hi: f64) -> Option<f64> {
        let phi = |t: f64| {
            let (x, y) = self.position(t).ok()?;
            Some(alpha * x + beta * y)
        };
        let mut best = (lo, phi(lo)?);
        let first = lo.floor() as usize + 1;
        let mut k = first;
        while (k as f64) < hi {
            let v = phi(k as f64)?;
            if v < best.1 {
                best = (k as f64, v);
            }
            k += 1;
        }
        let vh = phi(hi)?;
        if vh < best.1 {
            best = (hi, vh);
        }
        Some(best.0)
    }
}
