//! Weight expansion of concave toric domains.
//!
//! A concave domain is cut along the line `x + y = tau` tangent to its
//! boundary. The triangle below the line has weight `tau`; the two leftover
//! regions are moved by integral affine maps into standard position and
//! expanded recursively. Address `"1"` is the region next to the x-axis,
//! `"2"` the one next to the y-axis.

use crate::error::{Error, Result};
use crate::scalar::{cmp_desc, Scalar};

use super::boundary::ToricBoundary;

/// A monotone boundary arc with a linear-functional oracle, usable by the
/// expansion engine over any scalar kind.
pub trait ConvexArc<S: Scalar> {
    fn domain(&self) -> (S, S);
    fn point(&self, t: &S) -> Result<(S, S)>;
    /// A parameter in `[lo, hi]` minimizing `alpha * x + beta * y`.
    fn argmin_linear(&self, alpha: &S, beta: &S, lo: &S, hi: &S) -> Result<S>;
    /// Area between the whole arc and the coordinate axes.
    fn area(&self) -> Result<S>;
}

/// The map `z -> m z + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine<S> {
    pub m: [[S; 2]; 2],
    pub b: [S; 2],
}

impl<S: Scalar> Affine<S> {
    pub fn identity() -> Self {
        Affine { m: [[S::one(), S::zero()], [S::zero(), S::one()]], b: [S::zero(), S::zero()] }
    }

    pub fn apply(&self, z: &(S, S)) -> (S, S) {
        let [[a, b], [c, d]] = &self.m;
        (
            a.clone() * z.0.clone() + b.clone() * z.1.clone() + self.b[0].clone(),
            c.clone() * z.0.clone() + d.clone() * z.1.clone() + self.b[1].clone(),
        )
    }

    // Translate by -(tx, ty), then apply the shear [[1, s01], [s10, 1]].
    fn then_shear(&self, tx: S, ty: S, s01: S, s10: S) -> Self {
        let [[a, b], [c, d]] = self.m.clone();
        let (b0, b1) = (self.b[0].clone() - tx, self.b[1].clone() - ty);
        Affine {
            m: [
                [a.clone() + s01.clone() * c.clone(), b.clone() + s01.clone() * d.clone()],
                [s10.clone() * a + c, s10.clone() * b + d],
            ],
            b: [b0.clone() + s01 * b1.clone(), s10 * b0 + b1],
        }
    }

    fn child(&self, which: u8, tau: &S) -> Self {
        match which {
            1 => self.then_shear(tau.clone(), S::zero(), S::one(), S::zero()),
            _ => self.then_shear(S::zero(), tau.clone(), S::zero(), S::one()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightEntry<S> {
    pub address: String,
    pub weight: S,
}

/// A subregion that was not expanded because its weight fell below the cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct PrunedBranch<S> {
    pub address: String,
    pub lo: S,
    pub hi: S,
    pub map: Affine<S>,
    pub tau: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightExpansion<S> {
    /// Weights in non-increasing order; ties keep address order.
    pub entries: Vec<WeightEntry<S>>,
    pub area: S,
    /// `area - sum(w^2) / 2`: the area of the pruned subregions.
    pub truncation_bound: S,
    /// Largest weight among the pruned subregions (zero when none).
    pub max_pruned: S,
    pub pruned: Vec<PrunedBranch<S>>,
}

impl<S: Scalar> WeightExpansion<S> {
    pub fn weights(&self) -> Vec<S> {
        self.entries.iter().map(|e| e.weight.clone()).collect()
    }

    pub fn head(&self, n: usize) -> Vec<S> {
        self.entries.iter().take(n).map(|e| e.weight.clone()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ExpansionOptions<S> {
    /// Subregions with `tau` below this are pruned.
    pub min_weight: S,
    /// Values of `tau` at or below this count as empty subregions.
    pub empty_tol: S,
    /// Hard cap on the number of kept weights.
    pub max_entries: usize,
}

impl<S: Scalar> ExpansionOptions<S> {
    pub fn with_min_weight(min_weight: S) -> Self {
        ExpansionOptions { min_weight, empty_tol: S::zero(), max_entries: 1_000_000 }
    }
}

struct Node<S> {
    lo: S,
    hi: S,
    map: Affine<S>,
    address: String,
}

/// Tangency parameter and `tau` of the subregion cut out by `node`.
fn node_weight<S: Scalar, A: ConvexArc<S> + ?Sized>(arc: &A, lo: &S, hi: &S, map: &Affine<S>) -> Result<(S, S)> {
    let alpha = map.m[0][0].clone() + map.m[1][0].clone();
    let beta = map.m[0][1].clone() + map.m[1][1].clone();
    let t = arc.argmin_linear(&alpha, &beta, lo, hi)?;
    let (x, y) = arc.point(&t)?;
    let tau = alpha * x + beta * y + map.b[0].clone() + map.b[1].clone();
    Ok((t, tau))
}

pub fn expand<S: Scalar, A: ConvexArc<S> + ?Sized>(arc: &A, opts: &ExpansionOptions<S>) -> Result<WeightExpansion<S>> {
    if !(opts.min_weight > S::zero()) {
        return Err(Error::Domain("min_weight must be positive".into()));
    }
    let (lo, hi) = arc.domain();
    let area = arc.area()?;
    let mut entries = Vec::new();
    let mut pruned = Vec::new();
    let mut stack = vec![Node { lo, hi, map: Affine::identity(), address: String::new() }];
    while let Some(node) = stack.pop() {
        if node.lo >= node.hi {
            continue;
        }
        let (t, tau) = node_weight(arc, &node.lo, &node.hi, &node.map)?;
        if tau <= opts.empty_tol {
            continue;
        }
        if tau < opts.min_weight {
            pruned.push(PrunedBranch { address: node.address, lo: node.lo, hi: node.hi, map: node.map, tau });
            continue;
        }
        if entries.len() >= opts.max_entries {
            return Err(Error::Domain(format!(
                "weight expansion exceeded {} entries; raise min_weight",
                opts.max_entries
            )));
        }
        let c2 = Node {
            lo: node.lo.clone(),
            hi: t.clone(),
            map: node.map.child(2, &tau),
            address: format!("{}2", node.address),
        };
        let c1 = Node { lo: t, hi: node.hi, map: node.map.child(1, &tau), address: format!("{}1", node.address) };
        entries.push(WeightEntry { address: node.address, weight: tau });
        stack.push(c2);
        stack.push(c1);
    }
    entries.sort_by(|a, b| {
        cmp_desc(&a.weight, &b.weight)
            .then(a.address.len().cmp(&b.address.len()))
            .then(a.address.cmp(&b.address))
    });
    let mut sum_sq = S::zero();
    for e in &entries {
        sum_sq = sum_sq + e.weight.clone() * e.weight.clone();
    }
    let two = S::one() + S::one();
    let mut truncation_bound = area.clone() - sum_sq / two;
    if !S::EXACT && truncation_bound < S::zero() {
        truncation_bound = S::zero();
    }
    let max_pruned = pruned.iter().fold(S::zero(), |m, p| S::max_of(m, p.tau.clone()));
    Ok(WeightExpansion { entries, area, truncation_bound, max_pruned, pruned })
}

/// `tau` of the subregion at `address` (digits `1`/`2`), zero when empty.
pub fn node_tau<S: Scalar, A: ConvexArc<S> + ?Sized>(arc: &A, address: &str, empty_tol: &S) -> Result<S> {
    let (mut lo, mut hi) = arc.domain();
    let mut map = Affine::identity();
    let mut digits = address.chars();
    loop {
        if lo >= hi {
            return Ok(S::zero());
        }
        let (t, tau) = node_weight(arc, &lo, &hi, &map)?;
        if tau <= *empty_tol {
            return Ok(S::zero());
        }
        match digits.next() {
            None => return Ok(tau),
            Some('1') => {
                map = map.child(1, &tau);
                lo = t;
            }
            Some('2') => {
                map = map.child(2, &tau);
                hi = t;
            }
            Some(c) => return Err(Error::Domain(format!("invalid address digit {c:?}"))),
        }
    }
}

/// Images of the pruned arc samples under the node map, closed up by the
/// chord; a polygon with the subregion's area up to sampling error.
pub fn pruned_polygon<S: Scalar, A: ConvexArc<S> + ?Sized>(
    arc: &A,
    branch: &PrunedBranch<S>,
    n: usize,
) -> Result<Vec<(S, S)>> {
    let n = n.max(2);
    let mut out = Vec::with_capacity(n);
    let span = branch.hi.clone() - branch.lo.clone();
    let den = S::from_usize(n - 1).unwrap();
    for i in 0..n {
        let t = branch.lo.clone() + span.clone() * S::from_usize(i).unwrap() / den.clone();
        out.push(branch.map.apply(&arc.point(&t)?));
    }
    Ok(out)
}

impl ConvexArc<f64> for ToricBoundary {
    fn domain(&self) -> (f64, f64) {
        self.param_range()
    }

    fn point(&self, t: &f64) -> Result<(f64, f64)> {
        self.position(*t)
    }

    fn argmin_linear(&self, alpha: &f64, beta: &f64, lo: &f64, hi: &f64) -> Result<f64> {
        Ok(ToricBoundary::argmin_linear(self, *alpha, *beta, *lo, *hi)?.0)
    }

    fn area(&self) -> Result<f64> {
        ToricBoundary::area(self)
    }
}

/// The arc `x = s^2, y = (1 - s)^2` for `s` in `[0, 1]`, scaled by `scale`:
/// the boundary of `sqrt(x) + sqrt(y) <= sqrt(scale)`.
#[derive(Debug, Clone)]
pub struct ParabolaArc<S> {
    pub scale: S,
}

impl<S: Scalar> ParabolaArc<S> {
    pub fn unit() -> Self {
        ParabolaArc { scale: S::one() }
    }
}

impl<S: Scalar> ConvexArc<S> for ParabolaArc<S> {
    fn domain(&self) -> (S, S) {
        (S::zero(), S::one())
    }

    fn point(&self, t: &S) -> Result<(S, S)> {
        let u = S::one() - t.clone();
        Ok((self.scale.clone() * t.clone() * t.clone(), self.scale.clone() * u.clone() * u))
    }

    fn argmin_linear(&self, alpha: &S, beta: &S, lo: &S, hi: &S) -> Result<S> {
        let sum = alpha.clone() + beta.clone();
        if !(sum > S::zero()) {
            return Err(Error::Domain("linear functional must be positive".into()));
        }
        let s = beta.clone() / sum;
        Ok(if s < *lo {
            lo.clone()
        } else if s > *hi {
            hi.clone()
        } else {
            s
        })
    }

    fn area(&self) -> Result<S> {
        Ok(self.scale.clone() * self.scale.clone() / S::from_i64(6).unwrap())
    }
}

/// Piecewise-linear arc through `vertices`, parametrized by `t` in
/// `[0, n - 1]` with vertex `i` at `t = i`.
#[derive(Debug, Clone)]
pub struct Polyline<S> {
    vertices: Vec<(S, S)>,
}

impl<S: Scalar> Polyline<S> {
    pub fn new(vertices: Vec<(S, S)>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Domain("polyline needs at least two vertices".into()));
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[(S, S)] {
        &self.vertices
    }

    fn index_of(&self, t: &S) -> usize {
        let last = self.vertices.len() - 2;
        let mut i = 0;
        while i < last && S::from_usize(i + 1).unwrap() <= *t {
            i += 1;
        }
        i
    }
}

impl<S: Scalar> ConvexArc<S> for Polyline<S> {
    fn domain(&self) -> (S, S) {
        (S::zero(), S::from_usize(self.vertices.len() - 1).unwrap())
    }

    fn point(&self, t: &S) -> Result<(S, S)> {
        let i = self.index_of(t);
        let s = t.clone() - S::from_usize(i).unwrap();
        let (a, b) = (&self.vertices[i], &self.vertices[i + 1]);
        Ok((
            a.0.clone() + s.clone() * (b.0.clone() - a.0.clone()),
            a.1.clone() + s * (b.1.clone() - a.1.clone()),
        ))
    }

    fn argmin_linear(&self, alpha: &S, beta: &S, lo: &S, hi: &S) -> Result<S> {
        let phi = |t: &S| -> Result<S> {
            let (x, y) = self.point(t)?;
            Ok(alpha.clone() * x + beta.clone() * y)
        };
        let mut best_t = lo.clone();
        let mut best = phi(lo)?;
        for k in 0..self.vertices.len() {
            let tk = S::from_usize(k).unwrap();
            if tk > *lo && tk < *hi {
                let v = phi(&tk)?;
                if v < best {
                    best = v;
                    best_t = tk;
                }
            }
        }
        if phi(hi)? < best {
            best_t = hi.clone();
        }
        Ok(best_t)
    }

    fn area(&self) -> Result<S> {
        let mut s = S::zero();
        let n = self.vertices.len();
        // Shoelace over origin, then the vertices from the x-axis end back to the y-axis end.
        for i in (1..n).rev() {
            let (a, b) = (&self.vertices[i], &self.vertices[i - 1]);
            s = s + a.0.clone() * b.1.clone() - a.1.clone() * b.0.clone();
        }
        Ok(s.abs() / (S::one() + S::one()))
    }
}

/// Area of a simple polygon by the shoelace formula.
pub fn shoelace<S: Scalar>(pts: &[(S, S)]) -> S {
    let mut s = S::zero();
    for i in 0..pts.len() {
        let (a, b) = (&pts[i], &pts[(i + 1) % pts.len()]);
        s = s + a.0.clone() * b.1.clone() - a.1.clone() * b.0.clone();
    }
    s.abs() / (S::one() + S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn parabola_weights_exact() {
        let arc = ParabolaArc::<BigRational>::unit();
        let ex = expand(&arc, &ExpansionOptions::with_min_weight(q(1, 31))).unwrap();
        let expect = [q(1, 2), q(1, 6), q(1, 6), q(1, 12), q(1, 12), q(1, 20), q(1, 20), q(1, 30), q(1, 30), q(1, 30), q(1, 30)];
        assert_eq!(ex.weights(), expect.to_vec());
        assert_eq!(ex.area, q(1, 6));
        assert!(ex.truncation_bound > q(0, 1));
    }

    #[test]
    fn triangle_single_weight() {
        let arc = Polyline::new(vec![(q(0, 1), q(3, 1)), (q(3, 1), q(0, 1))]).unwrap();
        let ex = expand(&arc, &ExpansionOptions::with_min_weight(q(1, 100))).unwrap();
        assert_eq!(ex.weights(), vec![q(3, 1)]);
        assert_eq!(ex.truncation_bound, q(0, 1));
        assert!(ex.pruned.is_empty());
    }

    #[test]
    fn polyline_exact_expansion_terminates() {
        let arc = Polyline::new(vec![(q(0, 1), q(3, 1)), (q(1, 1), q(1, 1)), (q(3, 1), q(0, 1))]).unwrap();
        let ex = expand(&arc, &ExpansionOptions::with_min_weight(q(1, 1000))).unwrap();
        assert_eq!(ex.truncation_bound, q(0, 1));
        assert_eq!(ex.area, q(3, 1));
        let total: BigRational = ex.weights().iter().map(|w| w * w).fold(q(0, 1), |a, b| a + b);
        assert_eq!(total / q(2, 1), q(3, 1));
        assert_eq!(ex.entries[0].weight, q(2, 1));
    }

    #[test]
    fn node_tau_matches_expansion() {
        let arc = ParabolaArc::<BigRational>::unit();
        assert_eq!(node_tau(&arc, "", &q(0, 1)).unwrap(), q(1, 2));
        assert_eq!(node_tau(&arc, "1", &q(0, 1)).unwrap(), q(1, 6));
        assert_eq!(node_tau(&arc, "11", &q(0, 1)).unwrap(), q(1, 12));
        assert_eq!(node_tau(&arc, "12", &q(0, 1)).unwrap(), q(1, 30));
        assert!(node_tau(&arc, "3", &q(0, 1)).is_err());
    }

    #[test]
    fn pruned_area_accounts_for_deficit() {
        let arc = ParabolaArc::<f64>::unit();
        let ex = expand(&arc, &ExpansionOptions::with_min_weight(0.01)).unwrap();
        let mut pruned_area = 0.0;
        for br in &ex.pruned {
            let poly = pruned_polygon(&arc, br, 2000).unwrap();
            // Polygon of the arc plus the origin of the local frame.
            let mut pts = vec![(0.0, 0.0)];
            pts.extend(poly.into_iter());
            pruned_area += shoelace(&pts);
        }
        assert!((pruned_area - ex.truncation_bound).abs() < 1e-6, "{pruned_area} vs {}", ex.truncation_bound);
    }
}
