//! Symplectic embedding data for `l_p`-sums of discs in `C^2`.
//!
//! The Lagrangian `l_p`-sum `X_p` and the symplectic `l_p`-sum `B_p` are
//! toric domains. This crate computes their moment-image boundaries, ball
//! capacities through weight expansions and ECH capacities, decides ball
//! packings by Cremona reduction, and evaluates the inner and outer radii.
//!
//! Combinatorial code is generic over [`Scalar`]; use [`Rational`] for exact
//! arithmetic and `f64` elsewhere.

pub mod cremona;
pub mod dynamics;
pub mod ech;
pub mod error;
pub mod lp_lagrangian;
pub mod numerics;
pub mod param;
pub mod scalar;
pub mod symplectic_lp;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use param::PParam;
pub use scalar::{Comparison, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type PackingVectorQ = cremona::PackingVector<Rational>;
pub type PackingVectorF = cremona::PackingVector<f64>;
pub type VerdictQ = cremona::Verdict<Rational>;
pub type VerdictF = cremona::Verdict<f64>;
pub type WeightExpansionQ = toric::WeightExpansion<Rational>;
pub type WeightExpansionF = toric::WeightExpansion<f64>;
