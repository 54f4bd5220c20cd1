use thiserror::Error;

/// Errors raised by the model, oracle and co-simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation at a point where the closed form diverges.
    #[error("singular evaluation: {0}")]
    Singularity(String),
    /// Gate network does not have exactly one conducting side for a vector.
    #[error("topology error in gate `{gate}` for inputs {inputs}: {reason}")]
    Topology { gate: String, inputs: String, reason: String },
    /// Root bracket does not enclose a sign change.
    #[error("no sign change in bracket [{lo}, {hi}]: {context}")]
    Bracket { lo: f64, hi: f64, context: String },
    /// Iterative oracle failed to meet its tolerance.
    #[error("convergence failure: {reason} (residual {residual:e})")]
    Convergence { reason: String, residual: f64 },
    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature budget exhausted after {subdivisions} subdivisions: estimate {estimate:e}, error bound {error_bound:e}")]
    QuadratureBudget { subdivisions: usize, estimate: f64, error_bound: f64 },
    /// A request exceeds a configured resource cap.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Invalid configuration values.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
