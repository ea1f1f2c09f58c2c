use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous (found total degrees {0} and {1})")]
    Inhomogeneous(u32, u32),
    #[error("the zero polynomial is not a valid input")]
    ZeroPolynomial,
    #[error("variable `{0}` is outside the variable set of {1} variables")]
    UnknownVariable(String, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid one-parameter subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("combinatorial guard exceeded: {tuples} minors > limit {limit}")]
    GuardExceeded { tuples: u128, limit: u128 },
    #[error("base locus is positive-dimensional (common component of degree {0})")]
    PositiveDimensional(u32),
    #[error("curves share a common component through the point")]
    CommonComponent,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
