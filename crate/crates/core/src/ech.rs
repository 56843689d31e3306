//! ECH capacities of balls, disjoint unions of balls, concave toric domains
//! and ellipsoids.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::toric::{weight_expansion, ToricBoundary};

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityTable<S> {
    pub values: Vec<S>,
    pub domain_label: String,
}

/// The integer `d` with `d(d+1)/2 <= k < (d+1)(d+2)/2`.
pub fn ball_level(k: usize) -> usize {
    let mut d = ((2.0 * k as f64).sqrt() as usize).saturating_sub(1);
    while (d + 1) * (d + 2) / 2 <= k {
        d += 1;
    }
    while d * (d + 1) / 2 > k {
        d -= 1;
    }
    d
}

/// `c_k(B(a)) = d a`.
pub fn ball_capacity<S: Scalar>(a: &S, k: usize) -> S {
    S::from_usize(ball_level(k)).unwrap() * a.clone()
}

/// `c_k` of the disjoint union of balls `B(w_j)`, maximized over all ways to
/// split `k` among the balls.
pub fn union_capacity<S: Scalar>(weights: &[S], k: usize) -> Result<S> {
    if k == 0 {
        return Ok(S::zero());
    }
    if weights.is_empty() {
        return Err(Error::Domain("union capacity of an empty union".into()));
    }
    // Only the k largest balls can receive a positive index.
    let mut sorted = weights.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sorted.truncate(k);
    // best[j] = best value using the balls seen so far with total index j.
    let mut best: Vec<S> = (0..=k).map(|j| ball_capacity(&sorted[0], j)).collect();
    for w in &sorted[1..] {
        let ball: Vec<S> = (0..=k).map(|i| ball_capacity(w, i)).collect();
        let mut next = best.clone();
        for j in 0..=k {
            for i in 1..=j {
                let cand = best[j - i].clone() + ball[i].clone();
                if cand > next[j] {
                    next[j] = cand;
                }
            }
        }
        best = next;
    }
    Ok(best[k].clone())
}

pub fn union_capacity_table<S: Scalar>(weights: &[S], k_max: usize, label: &str) -> Result<CapacityTable<S>> {
    let values = (0..=k_max).map(|k| union_capacity(weights, k)).collect::<Result<Vec<_>>>()?;
    Ok(CapacityTable { values, domain_label: label.to_string() })
}

/// Bracket `(lower, upper)` on `c_k` of a concave toric domain.
///
/// `lower` uses the truncated weight expansion. When fewer than `k` weights
/// were kept, the pruned balls add at most `k` times the largest pruned
/// weight.
pub fn concave_capacity(b: &ToricBoundary, k: usize, min_weight: f64) -> Result<(f64, f64)> {
    let ex = weight_expansion(b, min_weight)?;
    let w = ex.weights();
    let lower = if k == 0 { 0.0 } else { union_capacity(&w, k)? };
    // Pruned weights are below every kept weight, so with at least k kept
    // balls an optimal split never needs a pruned one.
    let upper = if w.len() >= k { lower } else { lower + k as f64 * ex.max_pruned };
    Ok((lower, upper))
}

/// `c_k(E(a, b))`: the `(k+1)`-th smallest of `a m + b n` over `m, n >= 0`.
pub fn ellipsoid_capacity<S: Scalar>(a: &S, b: &S, k: usize) -> Result<S> {
    if !(*a > S::zero() && *b > S::zero()) {
        return Err(Error::Domain("ellipsoid axes must be positive".into()));
    }
    // The multiples 0, s, ..., k s of the shorter axis s are k + 1 values
    // below k s, so the (k+1)-th smallest value is at most k s.
    let mn = S::min_of(a.clone(), b.clone());
    let cap = S::from_usize(k).unwrap() * mn;
    let mut vals = Vec::new();
    let mut m = 0usize;
    loop {
        let am = S::from_usize(m).unwrap() * a.clone();
        if am > cap {
            break;
        }
        let mut n = 0usize;
        loop {
            let v = am.clone() + S::from_usize(n).unwrap() * b.clone();
            if v > cap {
                break;
            }
            vals.push(v);
            n += 1;
        }
        m += 1;
    }
    vals.sort_by(|x, y| x.partial_cmp(y).expect("comparable"));
    Ok(vals[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn ball_sequence() {
        let seq: Vec<usize> = (0..10).map(ball_level).collect();
        assert_eq!(seq, vec![0, 1, 1, 2, 2, 2, 3, 3, 3, 3]);
        assert_eq!(ball_capacity(&2.0, 5), 4.0);
        assert_eq!(ball_capacity(&1.0, 9), 3.0);
        for k in 0..2000 {
            let d = ball_level(k);
            assert!(d * (d + 1) / 2 <= k && k < (d + 1) * (d + 2) / 2);
        }
    }

    #[test]
    fn union_examples() {
        assert_eq!(union_capacity(&[1.0, 1.0], 3).unwrap(), 2.0);
        assert_eq!(union_capacity(&[q(1, 2), q(1, 6), q(1, 6)], 2).unwrap(), q(2, 3));
        assert!(union_capacity::<f64>(&[], 1).is_err());
        assert_eq!(union_capacity::<f64>(&[], 0).unwrap(), 0.0);
    }

    #[test]
    fn ellipsoid_examples() {
        assert_eq!(ellipsoid_capacity(&1.0, &1.0, 5).unwrap(), 2.0);
        assert_eq!(ellipsoid_capacity(&1.0, &2.0, 1).unwrap(), 1.0);
        assert_eq!(ellipsoid_capacity(&q(1, 2), &q(2, 3), 2).unwrap(), q(2, 3));
        assert_eq!(ellipsoid_capacity(&q(1, 2), &q(2, 3), 4).unwrap(), q(7, 6));
        assert!(ellipsoid_capacity(&0.0, &1.0, 1).is_err());
    }
}
