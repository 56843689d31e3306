//! Ball packings of a ball: Cremona moves, reduction and the resulting
//! embedding decision, plus the flexibility criterion for symmetric concave
//! toric domains.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::lp_lagrangian::{boundary_curve, g};
use crate::param::PParam;
use crate::scalar::{cmp_desc, Comparison, Scalar};
use crate::toric::{
    c1_c2_symmetric, subregion_tau, tangent_intercept, Shape, ToricBoundary, DEFAULT_SAMPLES,
};

pub const DEFAULT_MAX_MOVES: usize = 10_000;

/// `(c; a_1, ..., a_N)`: a target ball of capacity `c` and balls `a_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingVector<S> {
    pub head: S,
    pub tail: Vec<S>,
}

impl<S: Scalar> PackingVector<S> {
    pub fn new(head: S, tail: Vec<S>) -> Self {
        PackingVector { head, tail }
    }

    /// Tail sorted in non-increasing order.
    pub fn ordered(mut self) -> Self {
        self.tail.sort_by(cmp_desc);
        self
    }

    pub fn is_ordered(&self) -> bool {
        self.head >= self.tail.first().cloned().unwrap_or_else(S::zero)
            && self.tail.windows(2).all(|w| w[0] >= w[1])
    }

    fn padded(&self) -> (Self, bool) {
        if self.tail.len() >= 3 {
            return (self.clone(), false);
        }
        let mut tail = self.tail.clone();
        tail.resize(3, S::zero());
        (PackingVector { head: self.head.clone(), tail }, true)
    }
}

impl<S: Scalar> fmt::Display for PackingVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.head)?;
        for (i, a) in self.tail.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { ", " }, a)?;
        }
        write!(f, ")")
    }
}

/// The Cremona transform without re-sorting. Vectors shorter than three
/// entries are padded with zeros.
pub fn cremona_transform<S: Scalar>(v: &PackingVector<S>) -> PackingVector<S> {
    let (v, _) = v.padded();
    let (c, a) = (v.head.clone(), &v.tail);
    let (a1, a2, a3) = (a[0].clone(), a[1].clone(), a[2].clone());
    let two = S::one() + S::one();
    let mut tail = Vec::with_capacity(a.len());
    tail.push(c.clone() - a2.clone() - a3.clone());
    tail.push(c.clone() - a1.clone() - a3.clone());
    tail.push(c.clone() - a1.clone() - a2.clone());
    tail.extend(a[3..].iter().cloned());
    PackingVector { head: two * c - a1 - a2 - a3, tail }
}

/// One Cremona move: transform, then re-order the tail.
pub fn cremona_move<S: Scalar>(v: &PackingVector<S>) -> PackingVector<S> {
    cremona_transform(v).ordered()
}

fn sum3<S: Scalar>(v: &PackingVector<S>) -> S {
    v.tail.iter().take(3).fold(S::zero(), |s, a| s + a.clone())
}

/// `c >= a_1 + a_2 + a_3` and every `a_i >= 0`, each up to `eps`.
pub fn is_reduced<S: Scalar>(v: &PackingVector<S>, eps: &S) -> bool {
    v.head.compare(&sum3(v), eps) != Comparison::Less
        && v.tail.iter().all(|a| a.compare(&S::zero(), eps) != Comparison::Less)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Embeddable,
    NotEmbeddable,
    Inconclusive,
}

impl Outcome {
    /// Process exit code reporting this outcome.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Embeddable => 0,
            Outcome::NotEmbeddable => 1,
            Outcome::Inconclusive => 3,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Embeddable => "embeddable",
            Outcome::NotEmbeddable => "not-embeddable",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<S> {
    pub outcome: Outcome,
    /// The ordered input followed by the image after each move.
    pub trace: Vec<PackingVector<S>>,
    pub reason: String,
    /// The input had fewer than three balls and was padded with zeros.
    pub padded: bool,
}

impl<S> Verdict<S> {
    fn new(outcome: Outcome, trace: Vec<PackingVector<S>>, reason: impl Into<String>, padded: bool) -> Self {
        Verdict { outcome, trace, reason: reason.into(), padded }
    }

    pub fn moves(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

/// Decides whether the balls `B(a_i)` embed disjointly into `B(c)`.
///
/// A positive answer for a truncated weight list certifies only the
/// truncated union. With a nonzero `eps`, any comparison whose two sides are
/// within `eps` makes the verdict inconclusive.
pub fn pack_decision<S: Scalar>(c: S, balls: Vec<S>, max_moves: usize, eps: &S) -> Verdict<S> {
    let zero = S::zero();
    let (mut v, padded) = PackingVector::new(c, balls).ordered().padded();
    let mut trace = vec![v.clone()];
    let vol = v.tail.iter().fold(S::zero(), |s, a| s + a.clone() * a.clone());
    let csq = v.head.clone() * v.head.clone();
    let vol_eps = eps.clone() * S::max_of(csq.clone(), S::one());
    if v.tail.iter().any(|a| a.compare(&zero, eps) == Comparison::Less) {
        return Verdict::new(Outcome::NotEmbeddable, trace, "negative ball capacity", padded);
    }
    match vol.compare(&csq, &vol_eps) {
        Comparison::Greater => {
            return Verdict::new(
                Outcome::NotEmbeddable,
                trace,
                format!("volume: sum a_i^2 = {vol} > c^2 = {csq}"),
                padded,
            )
        }
        Comparison::Ambiguous => {
            return Verdict::new(Outcome::Inconclusive, trace, "volume comparison within tolerance", padded)
        }
        _ => {}
    }
    for moves in 0..=max_moves {
        match v.head.compare(&v.tail[0], eps) {
            Comparison::Less => {
                return Verdict::new(
                    Outcome::NotEmbeddable,
                    trace,
                    format!("after {moves} moves the largest ball exceeds the target: {v}"),
                    padded,
                )
            }
            Comparison::Ambiguous => {
                return Verdict::new(Outcome::Inconclusive, trace, "head and largest ball within tolerance", padded)
            }
            _ => {}
        }
        let signs = v.tail.iter().filter(|a| **a < zero).map(|a| a.compare(&zero, eps));
        match signs.reduce(|acc, c| if c == Comparison::Less { c } else { acc }) {
            Some(Comparison::Less) => {
                return Verdict::new(
                    Outcome::NotEmbeddable,
                    trace,
                    format!("negative entry after {moves} moves: {v}"),
                    padded,
                )
            }
            Some(_) => {
                return Verdict::new(Outcome::Inconclusive, trace, "negative entry within tolerance of zero", padded)
            }
            None => {}
        }
        match v.head.compare(&sum3(&v), eps) {
            Comparison::Greater | Comparison::Equal => {
                return Verdict::new(Outcome::Embeddable, trace, format!("reduced after {}", plural(moves, "move")), padded)
            }
            Comparison::Ambiguous => {
                return Verdict::new(
                    Outcome::Inconclusive,
                    trace,
                    format!("reduction test within tolerance after {}", plural(moves, "move")),
                    padded,
                )
            }
            Comparison::Less => {}
        }
        if moves == max_moves {
            break;
        }
        v = cremona_move(&v);
        trace.push(v.clone());
    }
    Verdict::new(Outcome::Inconclusive, trace, format!("no reduced vector within {max_moves} moves"), padded)
}

/// Checks the sufficient condition for `X_Omega` to embed into `B(c_2)`:
/// the volume bound and `tau(Omega_1) >= tau(Omega_11) + tau(Omega_111)`.
pub fn flex_check(b: &ToricBoundary) -> Result<Verdict<f64>> {
    if b.is_degenerate() {
        return Ok(Verdict::new(Outcome::Embeddable, Vec::new(), "the domain is a ball", false));
    }
    if !b.symmetric() || b.shape() != Shape::Concave {
        return domain("flexibility criterion needs a symmetric concave toric domain");
    }
    let (_, c) = c1_c2_symmetric(b)?;
    let area = b.area()?;
    let t1 = subregion_tau(b, "1")?;
    let t11 = subregion_tau(b, "11")?;
    let t111 = subregion_tau(b, "111")?;
    let eps = 1e-9;
    let vol = area.compare(&(0.5 * c * c), &(eps * c * c));
    let taus = t1.compare(&(t11 + t111), &(eps * c));
    let detail = format!(
        "c2 = {c}, area = {area}, c2^2/2 = {}, tau(1) = {t1}, tau(11) + tau(111) = {}",
        0.5 * c * c,
        t11 + t111
    );
    let outcome = match (vol, taus) {
        (Comparison::Less | Comparison::Equal, Comparison::Greater | Comparison::Equal) => Outcome::Embeddable,
        _ => Outcome::Inconclusive,
    };
    Ok(Verdict::new(outcome, Vec::new(), detail, false))
}

/// `(w_2(p), d(p)) = (x_{-1/2} - x_{-1}, x_{-1/4} - x_{-1/2})` for `Omega_p`.
pub fn lagrangian_wd(p: PParam) -> Result<(f64, f64)> {
    match p {
        PParam::Infinite => {
            let x = |n: f64| {
                let v = (std::f64::consts::PI / (n + 1.0)).cos();
                g(p, v).map(|gv| 2.0 * std::f64::consts::PI * v + (n + 1.0) * gv)
            };
            let (x1, x2, x4) = (x(1.0)?, x(2.0)?, x(4.0)?);
            Ok((x2 - x1, x4 - x2))
        }
        PParam::Finite(pv) if pv <= 4.5 => {
            domain(format!("w2 and d need p > 9/2 (got {pv}); x_(-1/2) sits at the vertex there"))
        }
        PParam::Finite(_) => {
            let b = boundary_curve(p, DEFAULT_SAMPLES)?;
            let x1 = tangent_intercept(&b, 1)?;
            let x2 = tangent_intercept(&b, 2)?;
            let x4 = tangent_intercept(&b, 4)?;
            Ok((x2 - x1, x4 - x2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn zero() -> BigRational {
        q(0, 1)
    }

    #[test]
    fn move_examples() {
        let v = PackingVector::new(q(3, 1), vec![q(1, 1), q(1, 1), q(1, 1), q(1, 2)]);
        assert_eq!(cremona_move(&v), v);
        assert!(is_reduced(&v, &zero()));
        assert!(!is_reduced(&PackingVector::new(q(1, 1), vec![q(1, 1), q(1, 1), q(1, 1)]), &zero()));
    }

    #[test]
    fn padding_is_flagged() {
        let verdict = pack_decision(q(1, 1), vec![q(1, 2), q(1, 2)], DEFAULT_MAX_MOVES, &zero());
        assert_eq!(verdict.outcome, Outcome::Embeddable);
        assert!(verdict.padded);
        assert_eq!(verdict.trace[0].tail.len(), 3);
    }

    #[test]
    fn volume_obstruction() {
        let verdict = pack_decision(q(1, 1), vec![q(1, 1), q(1, 1)], DEFAULT_MAX_MOVES, &zero());
        assert_eq!(verdict.outcome, Outcome::NotEmbeddable);
        assert_eq!(verdict.outcome.exit_code(), 1);
    }

    #[test]
    fn float_tie_is_inconclusive() {
        let c = 0.3;
        let verdict = pack_decision(c, vec![0.1, 0.1, 0.1], DEFAULT_MAX_MOVES, &1e-9);
        assert_eq!(verdict.outcome, Outcome::Inconclusive);
        let exact = pack_decision(q(3, 10), vec![q(1, 10), q(1, 10), q(1, 10)], DEFAULT_MAX_MOVES, &zero());
        assert_eq!(exact.outcome, Outcome::Embeddable);
    }

    #[test]
    fn six_equal_balls() {
        // Six balls of capacity 2/5 fill B(1) only in volume 24/25; they embed.
        let six = vec![q(2, 5); 6];
        assert_eq!(pack_decision(q(1, 1), six, DEFAULT_MAX_MOVES, &zero()).outcome, Outcome::Embeddable);
        // Two balls of capacity 0.6 do not: c < a1 + a2 with a3 = 0 and one move goes negative.
        let two = vec![q(3, 5), q(3, 5)];
        assert_eq!(pack_decision(q(1, 1), two, DEFAULT_MAX_MOVES, &zero()).outcome, Outcome::NotEmbeddable);
    }
}
