//! Adaptive Gauss–Kronrod quadrature with endpoint clustering.
//!
//! Flagged endpoints are removed by the substitution `x = a + (b - a) s²`
//! (or its mirror at the right end), which turns `(x - a)^(±1/2)` behavior
//! into a smooth integrand in `s`. When both ends are flagged the interval
//! is split at its midpoint and each half is clustered toward its own end.
//! The transformed pieces are then refined globally by bisecting the panel
//! with the largest error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};

/// Kronrod 21-point abscissae; odd indices are the Gauss 10-point nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Default absolute and relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Integrand evaluations allowed per integral.
pub const NODE_BUDGET: usize = 1_000_000;

/// Interval, tolerances and endpoint flags for one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<F> {
    pub lower: F,
    pub upper: F,
    pub abs_tol: F,
    pub rel_tol: F,
    pub singular_left: bool,
    pub singular_right: bool,
}

impl<F: Float + FromPrimitive> QuadratureSpec<F> {
    pub fn new(lower: F, upper: F) -> Self {
        let tol = F::from_f64(DEFAULT_TOL).unwrap();
        QuadratureSpec {
            lower,
            upper,
            abs_tol: tol,
            rel_tol: tol,
            singular_left: false,
            singular_right: false,
        }
    }

    pub fn singular(mut self, left: bool, right: bool) -> Self {
        self.singular_left = left;
        self.singular_right = right;
        self
    }

    pub fn tolerances(mut self, abs_tol: F, rel_tol: F) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.lower < self.upper) {
            return Err(Error::Domain(format!(
                "quadrature interval must satisfy lower < upper (got [{:?}, {:?}])",
                self.lower.to_f64(),
                self.upper.to_f64()
            )));
        }
        if !(self.abs_tol > F::zero()) || !(self.rel_tol > F::zero()) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Value, error bound and cost of a converged integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<F> {
    pub value: F,
    pub error: F,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
enum Piece<F> {
    /// `x = a + len * s^2`, `s` in `[0, 1]`.
    ClusterLeft { a: F, len: F },
    /// `x = b - len * s^2`, `s` in `[0, 1]`.
    ClusterRight { b: F, len: F },
    /// Identity map on `[a, b]`.
    Plain,
}

impl<F: Float> Piece<F> {
    /// Maps the panel variable to `(x, dx/ds)`.
    #[inline]
    fn map(&self, s: F) -> (F, F) {
        let two = F::one() + F::one();
        match *self {
            Piece::ClusterLeft { a, len } => (a + len * s * s, two * len * s),
            Piece::ClusterRight { b, len } => (b - len * s * s, two * len * s),
            Piece::Plain => (s, F::one()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<F> {
    lo: F,
    hi: F,
    piece: usize,
    value: F,
    error: F,
}

impl<F: Float> PartialEq for Panel<F> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<F: Float> Eq for Panel<F> {}
impl<F: Float> PartialOrd for Panel<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Float> Ord for Panel<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn c<F: FromPrimitive>(x: f64) -> F {
    F::from_f64(x).unwrap()
}

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn gk21<F, G>(f: &G, piece: &Piece<F>, lo: F, hi: F) -> Result<(F, F)>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    let half = c::<F>(0.5);
    let centr = half * (lo + hi);
    let hlgth = half * (hi - lo);
    let eval = |s: F| -> Result<F> {
        let (x, jac) = piece.map(s);
        let y = f(x) * jac;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Domain(format!(
                "integrand is not finite at x = {:?}",
                x.to_f64()
            )))
        }
    };

    let mut fv1 = [F::zero(); 10];
    let mut fv2 = [F::zero(); 10];
    let fc = eval(centr)?;
    let mut resg = F::zero();
    let mut resk = c::<F>(WGK[10]) * fc;
    let mut resabs = resk.abs();
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let absc = hlgth * c(XGK[jtw]);
        let f1 = eval(centr - absc)?;
        let f2 = eval(centr + absc)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        let fsum = f1 + f2;
        resg = resg + c::<F>(WG[j]) * fsum;
        resk = resk + c::<F>(WGK[jtw]) * fsum;
        resabs = resabs + c::<F>(WGK[jtw]) * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let absc = hlgth * c(XGK[jtwm1]);
        let f1 = eval(centr - absc)?;
        let f2 = eval(centr + absc)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        let fsum = f1 + f2;
        resk = resk + c::<F>(WGK[jtwm1]) * fsum;
        resabs = resabs + c::<F>(WGK[jtwm1]) * (f1.abs() + f2.abs());
    }
    let reskh = resk * half;
    let mut resasc = c::<F>(WGK[10]) * (fc - reskh).abs();
    for j in 0..10 {
        resasc = resasc + c::<F>(WGK[j]) * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * hlgth;
    resabs = resabs * hlgth.abs();
    resasc = resasc * hlgth.abs();
    let mut abserr = ((resk - resg) * hlgth).abs();
    if resasc != F::zero() && abserr != F::zero() {
        let scale = (c::<F>(200.0) * abserr / resasc).powf(c(1.5));
        abserr = resasc * scale.min(F::one());
    }
    let epmach = F::epsilon();
    if resabs > F::min_positive_value() / (c::<F>(50.0) * epmach) {
        abserr = abserr.max(c::<F>(50.0) * epmach * resabs);
    }
    Ok((result, abserr))
}

/// Integrates `f` over the interval of `spec`, returning the value only.
pub fn integrate<F, G>(f: G, spec: &QuadratureSpec<F>) -> Result<F>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    integrate_with_estimate(f, spec).map(|e| e.value)
}

/// Integrates `f` and reports the error bound and evaluation count.
pub fn integrate_with_estimate<F, G>(f: G, spec: &QuadratureSpec<F>) -> Result<Estimate<F>>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    spec.validate()?;
    let (a, b) = (spec.lower, spec.upper);
    let pieces: Vec<(Piece<F>, F, F)> = match (spec.singular_left, spec.singular_right) {
        (false, false) => vec![(Piece::Plain, a, b)],
        (true, false) => vec![(Piece::ClusterLeft { a, len: b - a }, F::zero(), F::one())],
        (false, true) => vec![(Piece::ClusterRight { b, len: b - a }, F::zero(), F::one())],
        (true, true) => {
            let mid = c::<F>(0.5) * (a + b);
            vec![
                (Piece::ClusterLeft { a, len: mid - a }, F::zero(), F::one()),
                (Piece::ClusterRight { b, len: b - mid }, F::zero(), F::one()),
            ]
        }
    };
    let kinds: Vec<Piece<F>> = pieces.iter().map(|p| p.0).collect();

    const INITIAL_SPLIT: usize = 4;
    const EVALS_PER_PANEL: usize = 21;
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    for (idx, &(_, lo, hi)) in pieces.iter().enumerate() {
        let width = (hi - lo) / c(INITIAL_SPLIT as f64);
        for k in 0..INITIAL_SPLIT {
            let plo = lo + width * c(k as f64);
            let phi = if k + 1 == INITIAL_SPLIT { hi } else { plo + width };
            let (value, error) = gk21(&f, &kinds[idx], plo, phi)?;
            evaluations += EVALS_PER_PANEL;
            heap.push(Panel { lo: plo, hi: phi, piece: idx, value, error });
        }
    }

    // Panels too narrow to bisect in this precision.
    let mut frozen_value = F::zero();
    let mut frozen_error = F::zero();
    loop {
        let (mut total, mut err) = (frozen_value, frozen_error);
        for p in heap.iter() {
            total = total + p.value;
            err = err + p.error;
        }
        let tol = spec.abs_tol.max(spec.rel_tol * total.abs());
        if err <= tol {
            return Ok(Estimate { value: total, error: err, evaluations });
        }
        let exhausted = heap.is_empty() || evaluations + 2 * EVALS_PER_PANEL > NODE_BUDGET;
        if exhausted {
            return Err(Error::NoConvergence {
                estimate: total.to_f64().unwrap_or(f64::NAN),
                error: err.to_f64().unwrap_or(f64::NAN),
                evaluations,
            });
        }
        // Bisect a batch of the worst panels between re-summations.
        let batch = if heap.len() > 64 { heap.len() / 16 } else { 1 };
        for _ in 0..batch.max(1) {
            let Some(worst) = heap.pop() else { break };
            let mid = c::<F>(0.5) * (worst.lo + worst.hi);
            let scale = worst.lo.abs().max(worst.hi.abs()).max(F::min_positive_value());
            if mid <= worst.lo || mid >= worst.hi || (worst.hi - worst.lo) < c::<F>(64.0) * F::epsilon() * scale {
                frozen_value = frozen_value + worst.value;
                frozen_error = frozen_error + worst.error;
                continue;
            }
            let kind = &kinds[worst.piece];
            let (v1, e1) = gk21(&f, kind, worst.lo, mid)?;
            let (v2, e2) = gk21(&f, kind, mid, worst.hi)?;
            evaluations += 2 * EVALS_PER_PANEL;
            heap.push(Panel { lo: worst.lo, hi: mid, piece: worst.piece, value: v1, error: e1 });
            heap.push(Panel { lo: mid, hi: worst.hi, piece: worst.piece, value: v2, error: e2 });
            if evaluations + 2 * EVALS_PER_PANEL > NODE_BUDGET {
                break;
            }
        }
    }
}

/// Integrates over `[lower, +inf)` through `x = lower + t / (1 - t)`.
pub fn integrate_semi_infinite<F, G>(f: G, lower: F, abs_tol: F, rel_tol: F, singular_left: bool) -> Result<F>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    let g = |t: F| {
        let one_minus = F::one() - t;
        if one_minus <= F::zero() {
            return F::zero();
        }
        let x = lower + t / one_minus;
        f(x) / (one_minus * one_minus)
    };
    let spec = QuadratureSpec::new(F::zero(), F::one())
        .tolerances(abs_tol, rel_tol)
        .singular(singular_left, false);
    integrate(g, &spec)
}
