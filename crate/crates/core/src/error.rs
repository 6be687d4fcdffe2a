use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("degree {got} is below the minimum {min} for this operation")]
    DegreeTooLow { got: usize, min: usize },

    #[error("{0}")]
    Domain(String),

    #[error("operation requires exact arithmetic")]
    ExactRequired,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("characteristic discriminant {0} is not the square of a rational; use approx mode")]
    NonSquareDiscriminant(String),

    #[error("degree {n} exceeds the permutation cap {cap} ({n}! sets); raise the cap explicitly")]
    CapExceeded { n: usize, cap: usize },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("root finding did not converge after {restarts} restarts (worst residual {worst_residual:e})")]
    NoConvergence {
        restarts: u32,
        worst_residual: f64,
        best: Vec<crate::numeric::Approx>,
        residuals: Vec<f64>,
    },
}
