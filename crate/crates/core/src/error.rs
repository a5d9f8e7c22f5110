use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 65536")]
    InvalidCharacteristic(u64),
    #[error("extension degree {0} must be at least 1")]
    InvalidExtensionDegree(usize),
    #[error("field F_{p}^{k} has too many elements for this implementation")]
    FieldTooLarge { p: u64, k: usize },
    #[error("cannot embed a degree-{from} field into a degree-{to} field")]
    IncompatibleFields { from: usize, to: usize },
    #[error("polynomial syntax: {0}")]
    Parse(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected a homogeneous cubic, got degree {0}")]
    NotCubic(i64),
    #[error("the cubic curve is singular")]
    Singular,
    #[error("the ideal is not primary to the irrelevant ideal")]
    NotPrimary,
    #[error("an ideal needs at least two generators")]
    TooFewGenerators,
    #[error("generators must be nonzero of positive degree")]
    BadGenerator,
    #[error("the candidate must be a nonzero homogeneous polynomial")]
    BadCandidate,
    #[error("entry ({row}, {col}) of a graded map has the wrong degree")]
    DegreeMismatch { row: usize, col: usize },
    #[error("Hilbert function is not linear near degree {0}")]
    NotLinear(i64),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
