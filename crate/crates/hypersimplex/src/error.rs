use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("Gram matrices differ beyond tolerance (max residual {0:.3e})")]
    GramMismatch(f64),

    #[error("vector is not spacelike (norm {0:.6e} >= 0)")]
    NotSpacelike(f64),

    #[error("the two inputs define the same hyperplane")]
    SameHyperplane,

    #[error("point outside the closed unit ball (norm {0:.6})")]
    OutsideBall(f64),

    #[error("vertices are not independent: {0}")]
    NotTotal(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("optimizer failed to converge after {restarts} restarts (best value {best})")]
    NonConvergence { restarts: usize, best: f64 },

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
