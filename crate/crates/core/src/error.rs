use thiserror::Error;

/// Errors produced by the solvers and evaluators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration value (damping, tolerance, node count, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An iterative solver ran out of iterations.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    /// A root bracket did not straddle a sign change.
    #[error("bracket [{lo}, {hi}] does not contain a sign change")]
    Bracket { lo: f64, hi: f64 },

    /// A callback or integrand produced a non-finite value.
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// Output of a solver failed a sanity check.
    #[error("sanity check failed: {0}")]
    Sanity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
