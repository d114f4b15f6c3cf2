use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("char-0 proxy prime {0} is below 2^20")]
    ProxyPrimeTooSmall(u32),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("series denominator has zero constant term")]
    NonUnitConstantTerm,
    #[error("bound only covers m >= n (got m = {m}, n = {n})")]
    UnderdeterminedNotCovered { n: usize, m: usize },
    #[error("not found within degree {0}")]
    NotFoundWithin(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("linear transform is singular")]
    SingularTransform,
    #[error("degree {d} is below the largest generator degree {min}")]
    DegreeTooSmall { d: usize, min: usize },
    #[error("system is not oil-and-vinegar: {0}")]
    NotOv(String),
    #[error("system is not mixed: {0}")]
    NotMixed(String),
    #[error("subset {0:?} has zero vinegar determinant")]
    SingularSubset(Vec<usize>),
    #[error("series truncated at {have} leaves no headroom (need {need})")]
    InsufficientHeadroom { have: usize, need: usize },
    #[error("matrix of {rows}x{cols} entries exceeds the budget of {budget}")]
    BudgetExceeded { rows: usize, cols: usize, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
