use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("composition requires a zero constant term in the inner series")]
    NonzeroConstantTerm,
    #[error("series reversion needs f(0) = 0 and an invertible linear coefficient")]
    NotReversible,
    #[error("singular derivative at the Newton seed (wrong branch?)")]
    SingularDerivative,
    #[error("seed is not a root at g = 0 (residual {0})")]
    BadSeed(String),
    #[error("non-invertible coefficient: {0}")]
    NotInvertible(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("pattern size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("Gram matrix is singular at tau = {0}")]
    SingularGram(String),
    #[error("missing Weingarten table for k = {0}")]
    MissingTable(usize),
    #[error("order {order} exceeds the configured feasibility bound {bound}")]
    Infeasible { order: usize, bound: usize },
    #[error("insufficient data: {0}")]
    Insufficient(String),
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("consistency check failed: {0}")]
    Check(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
