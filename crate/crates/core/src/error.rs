use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The object lacks a capability the operation needs (density, mgf, derivative, ...).
    #[error("unsupported capability: {0}")]
    Unsupported(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition on the inputs does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A mathematical hypothesis required for the result is not met.
    #[error("contract violated: {0}")]
    Contract(String),

    /// Quadrature did not reach the requested accuracy or the integral diverges.
    #[error("integration failure: {message} (estimate {estimate:e}, error {error:e})")]
    Integration {
        message: String,
        estimate: f64,
        error: f64,
    },

    /// Iterative numeric routine failed.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Requested size exceeds a fixed resource budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A truncated sum is not resolved at the requested relative level.
    #[error("insufficient resolution: {message} (tail bound {tail:e} vs head {head:e})")]
    Resolution { message: String, head: f64, tail: f64 },

    /// A user-supplied function produced a non-finite value.
    #[error("evaluation produced a non-finite value at x = {0}")]
    Evaluation(f64),

    /// Construction impossible from the supplied data.
    #[error("cannot construct: {0}")]
    Construct(String),
}

pub type Result<T> = std::result::Result<T, Error>;
