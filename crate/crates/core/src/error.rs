use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result is not representable as a finite `f64`.
    #[error("range error: {0}")]
    Range(String),

    /// An integral over (0, ∞) grows instead of converging.
    #[error("integral diverges: {0}")]
    Divergence(String),

    /// Adaptive quadrature ran out of budget before reaching its tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    Accuracy { estimate: f64, error_bound: f64 },

    /// The input carries no information to work with (e.g. a zero density pair).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The ODE integrator could not advance.
    #[error("integration failed: {0}")]
    Integration(String),

    /// Tail classification could not decide within its doubling budget.
    #[error("tail classification inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
