use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A rational number was constructed or divided with a zero denominator.
    #[error("zero denominator")]
    ZeroDenominator,

    /// An argument fell outside the domain of an operation.
    #[error("domain: {0}")]
    Domain(String),

    /// Expansion order outside the supported range.
    #[error("unsupported order: n = {0} (supported range is 1..=64)")]
    UnsupportedOrder(i64),

    /// Evaluation point too close to a singularity of the series or sum.
    #[error("pole: alpha = {0} is within 1e-9 of a singularity")]
    Pole(f64),

    /// Expression text failed to parse. `position` is a 0-based byte offset.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    /// A division node evaluated with a near-zero denominator.
    #[error("division by zero at x = {0}")]
    DivisionByZero(f64),

    /// Adaptive quadrature hit the depth cap with the estimate above tolerance.
    #[error("nonconvergence: error estimate {estimate:e} exceeds tolerance {tol:e} at depth cap")]
    Nonconvergence { estimate: f64, tol: f64 },

    /// The weight function failed the periodicity/reflection check.
    #[error("symmetry violation: {0}")]
    Symmetry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
