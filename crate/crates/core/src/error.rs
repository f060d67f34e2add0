use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("interaction range m = {range} must satisfy 1 <= m < N = {n_sites}")]
    RangeOutOfBounds { range: usize, n_sites: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid site selection: {0}")]
    InvalidSites(String),

    #[error("correlation matrix eigenvalue magnitude {nu} exceeds 1 beyond tolerance")]
    UnphysicalCorrelation { nu: f64 },

    #[error("eigen-decomposition did not converge: {0}")]
    Decomposition(String),

    #[error("degenerate fit design: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
