//! Toric domains described by their moment-image boundary.

mod boundary;
mod expansion;

pub use boundary::{
    classify, BoundaryCurve, Classification, CurvePoint, PolylineCurve, Shape, ToricBoundary, DEFAULT_SAMPLES,
};
pub use expansion::{
    expand, node_tau, pruned_polygon, shoelace, Affine, ConvexArc, ExpansionOptions, ParabolaArc, Polyline,
    PrunedBranch, WeightEntry, WeightExpansion,
};

use crate::error::{Error, Result};
use crate::numerics::find_root_with_values;

/// Relative threshold below which a float `tau` marks an empty subregion.
pub const EMPTY_REL_TOL: f64 = 1e-12;

fn require_concave(b: &ToricBoundary) -> Result<()> {
    if b.shape() == Shape::Concave || b.is_degenerate() {
        Ok(())
    } else {
        Err(Error::Domain("operation requires a concave toric domain".into()))
    }
}

/// Largest `c` such that the triangle `x + y <= c` fits under the boundary.
pub fn tau(b: &ToricBoundary) -> Result<f64> {
    require_concave(b)?;
    let (lo, hi) = b.param_range();
    Ok(b.argmin_linear(1.0, 1.0, lo, hi)?.1)
}

/// `x_{-1/n}`: x-intercept of the supporting line of slope `-1/n` lying
/// below the boundary, i.e. the minimum of `x + n y` along the curve.
pub fn tangent_intercept(b: &ToricBoundary, n: u32) -> Result<f64> {
    require_concave(b)?;
    if n == 0 {
        return Err(Error::Domain("n must be a positive integer".into()));
    }
    let (lo, hi) = b.param_range();
    Ok(b.argmin_linear(1.0, n as f64, lo, hi)?.1)
}

pub fn default_min_weight(b: &ToricBoundary) -> Result<f64> {
    Ok(1e-4 * tau(b)?)
}

pub fn weight_expansion(b: &ToricBoundary, min_weight: f64) -> Result<WeightExpansion<f64>> {
    require_concave(b)?;
    let root = tau(b)?;
    let opts = ExpansionOptions { min_weight, empty_tol: EMPTY_REL_TOL * root, max_entries: 2_000_000 };
    expand(b, &opts)
}

/// `tau` of the subregion at `address` of the expansion of `b`.
pub fn subregion_tau(b: &ToricBoundary, address: &str) -> Result<f64> {
    require_concave(b)?;
    let root = tau(b)?;
    node_tau(b, address, &(EMPTY_REL_TOL * root))
}

/// Which formula produced `c2` for a symmetric domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetricCase {
    /// Convex domain: `(a, 2b)`.
    Convex,
    /// Concave with slopes in `[-2, -1/2]`: `(2b, a)`.
    ConcaveSteep,
    /// Concave with a point of slope `-1/2`: `(2b, 2 y(v0) + x(v0))`.
    ConcaveTangent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricCapacities {
    pub c1: f64,
    pub c2: f64,
    pub case: SymmetricCase,
    /// Diagonal point `(b, b)`.
    pub diagonal: f64,
    /// Parameter of the slope `-1/2` point in the tangent case.
    pub v0: Option<f64>,
}

pub fn c1_c2_symmetric(b: &ToricBoundary) -> Result<(f64, f64)> {
    let s = symmetric_capacities(b)?;
    Ok((s.c1, s.c2))
}

pub fn symmetric_capacities(b: &ToricBoundary) -> Result<SymmetricCapacities> {
    if !b.symmetric() {
        return Err(Error::Domain("c1/c2 formulas require a symmetric toric domain".into()));
    }
    let a = b.x_intercept();
    let td = b.diagonal_param()?;
    let diag = b.position(td)?.0;
    if b.shape() == Shape::Convex {
        return Ok(SymmetricCapacities { c1: a, c2: 2.0 * diag, case: SymmetricCase::Convex, diagonal: diag, v0: None });
    }
    let (_, hi) = b.param_range();
    let h = |t: f64| match b.velocity(t) {
        Ok((vx, vy)) => vx + 2.0 * vy,
        Err(_) => f64::NAN,
    };
    let (h_lo, h_hi) = (h(td), h(hi));
    if h_hi <= 0.0 {
        return Ok(SymmetricCapacities {
            c1: 2.0 * diag,
            c2: a,
            case: SymmetricCase::ConcaveSteep,
            diagonal: diag,
            v0: None,
        });
    }
    let v0 = find_root_with_values(h, td, hi, h_lo, h_hi, 1e-14)?;
    let (x0, y0) = b.position(v0)?;
    Ok(SymmetricCapacities {
        c1: 2.0 * diag,
        c2: 2.0 * y0 + x0,
        case: SymmetricCase::ConcaveTangent,
        diagonal: diag,
        v0: Some(v0),
    })
}
