use thiserror::Error;

/// Errors raised by the analytic and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge after {evaluations} evaluations: estimate {estimate:e}, error bound {error:e}")]
    NoConvergence {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("value not attained: {0}")]
    NotAttained(String),

    #[error("derivative not injective on this side: {0}")]
    NotInjective(String),

    #[error("not a convex/concave toric domain")]
    MixedCurvature,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
