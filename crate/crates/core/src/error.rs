use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid coefficient `{0}`")]
    Coefficient(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid exponent in `{0}`")]
    Exponent(String),
    #[error("malformed term `{0}`")]
    Term(String),
    #[error("expected {expected} exponents, found {found}")]
    ExponentCount { expected: usize, found: usize },
    #[error("unknown monomial order `{0}`")]
    Order(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is neither zero nor prime")]
    CompositeCharacteristic(u64),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("parameter `{0}` has no assigned value")]
    UnassignedParameter(String),
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("the ring has no parameter/main variable partition")]
    NoPartition,
    #[error("input polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero ideal has no generators")]
    ZeroIdeal,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Groebner basis budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("Hilbert function is not realizable by a lexsegment ideal: {0}")]
    Inadmissible(String),
    #[error("no majority among {trials} trials (best agreement {best})")]
    Inconclusive { trials: usize, best: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
