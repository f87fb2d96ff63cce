use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension must be at least {min}, got {got}")]
    BadDimension { min: usize, got: usize },
    #[error("argument at a pole of {0}")]
    Pole(&'static str),
    #[error("series did not converge: {0}")]
    SeriesDivergence(String),
    #[error("quadrature failed to reach eps={eps}: achieved {achieved}")]
    QuadratureFailure { eps: f64, achieved: f64 },
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("exact mode limited to n <= {max}, got {got}")]
    ExactModeOverflow { max: usize, got: usize },
    #[error("zero variance sample")]
    ZeroVariance,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
