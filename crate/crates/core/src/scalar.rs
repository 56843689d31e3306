//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Combinatorial routines (ball capacities, weight recursion, Cremona
//! reduction) run unchanged over `f64`, `f32` and arbitrary-precision
//! rationals. Comparisons go through [`Scalar::compare`] so that floating
//! kinds can report near-ties instead of silently picking a side.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Outcome of a tolerance-aware comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    /// The two values differ by a nonzero amount no larger than the tie band.
    Ambiguous,
}

impl Comparison {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// True for kinds where arithmetic is exact.
    const EXACT: bool;

    /// Default tie band used by [`Scalar::compare`] callers; zero when exact.
    fn default_tie_eps() -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Compare `self` against `other`; a nonzero difference of magnitude at
    /// most `eps` is reported as [`Comparison::Ambiguous`].
    fn compare(&self, other: &Self, eps: &Self) -> Comparison {
        let d = self.clone() - other.clone();
        if d.is_zero() {
            return Comparison::Equal;
        }
        if !eps.is_zero() && d.abs() <= *eps {
            return Comparison::Ambiguous;
        }
        if d.is_positive() {
            Comparison::Greater
        } else {
            Comparison::Less
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn default_tie_eps() -> Self {
        1e-9
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn default_tie_eps() -> Self {
        1e-5
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn default_tie_eps() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Total order for sorting; incomparable floats (NaN) sort as equal.
pub(crate) fn cmp_desc<S: Scalar>(a: &S, b: &S) -> Ordering {
    b.partial_cmp(a).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_compare_never_ambiguous() {
        let a = BigRational::from_ratio(1, 3);
        let b = BigRational::from_ratio(1, 3);
        let eps = BigRational::default_tie_eps();
        assert_eq!(a.compare(&b, &eps), Comparison::Equal);
        let c = BigRational::from_ratio(1, 1_000_000_007);
        assert_eq!(c.compare(&BigRational::from_ratio(0, 1), &eps), Comparison::Greater);
    }

    #[test]
    fn float_tie_band() {
        assert_eq!(1.0f64.compare(&1.0, &1e-9), Comparison::Equal);
        assert_eq!((1.0f64 + 1e-12).compare(&1.0, &1e-9), Comparison::Ambiguous);
        assert_eq!(1.1f64.compare(&1.0, &1e-9), Comparison::Greater);
        assert_eq!(0.9f64.compare(&1.0, &1e-9), Comparison::Less);
    }
}
