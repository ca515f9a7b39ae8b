use thiserror::Error;

/// Errors raised by model construction, solvers and file handling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The primitives violate a structural requirement of the model.
    #[error("model error: {0}")]
    Model(String),
    /// A formula hit a zero denominator or a non-finite value.
    #[error("singularity: {0}")]
    Singularity(String),
    /// An iterative method failed to reach its tolerance.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// A combinatorial search would exceed its budget.
    #[error("resource limit: {what} needs {needed} candidates (budget {budget})")]
    Resource {
        what: String,
        needed: u128,
        budget: u128,
    },
    /// Two independent computations that must agree did not.
    #[error("consistency error: {0}")]
    Consistency(String),
    /// The regime implied by the reaction interval is incompatible with the request.
    #[error("regime inconsistency: {0}")]
    Regime(String),
    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Malformed configuration, game file or solution file.
    #[error("invalid input: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
