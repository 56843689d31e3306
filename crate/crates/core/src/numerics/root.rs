//! Bracketing root finder (Brent's method).

use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Finds a root of `f` on `[lo, hi]` given a sign change at the ends.
///
/// Returns `x` with `|f(x)| <= tol` or with a final bracket narrower than
/// `tol`. Convergence is guaranteed by falling back to bisection whenever
/// the interpolation step leaves the bracket or stalls.
pub fn find_root_monotone<F, G>(f: G, lo: F, hi: F, tol: F) -> Result<F>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    let fa = f(lo);
    let fb = f(hi);
    find_root_with_values(f, lo, hi, fa, fb, tol)
}

/// Same as [`find_root_monotone`] with caller-supplied endpoint values.
///
/// Useful when `f` is only defined by a limit at an endpoint.
pub fn find_root_with_values<F, G>(f: G, lo: F, hi: F, f_lo: F, f_hi: F, tol: F) -> Result<F>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    let half = F::from_f64(0.5).unwrap();
    let two = F::from_f64(2.0).unwrap();
    let three = F::from_f64(3.0).unwrap();
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f_lo, f_hi);
    if fa.is_nan() || fb.is_nan() || (fa > F::zero() && fb > F::zero()) || (fa < F::zero() && fb < F::zero()) {
        return Err(Error::NotBracketed {
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
            f_lo: fa.to_f64().unwrap_or(f64::NAN),
            f_hi: fb.to_f64().unwrap_or(f64::NAN),
        });
    }
    if fa == F::zero() {
        return Ok(a);
    }
    if fb == F::zero() {
        return Ok(b);
    }
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if (fb > F::zero() && fc > F::zero()) || (fb < F::zero() && fc < F::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * F::epsilon() * b.abs() + half * tol;
        let xm = half * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= tol || fb == F::zero() {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = F::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qq * (qq - r) - (b - a) * (r - F::one()));
                q = (qq - F::one()) * (r - F::one()) * (s - F::one());
            }
            if p > F::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = three * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b = b + d;
        } else {
            b = b + if xm > F::zero() { tol1 } else { -tol1 };
        }
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::Domain("root finder hit a non-finite function value".into()));
        }
    }
    Ok(b)
}
