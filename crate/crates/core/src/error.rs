use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero linear form{}", .0.as_ref().map(|n| format!(" ({n})")).unwrap_or_default())]
    ZeroForm(Option<String>),
    #[error("duplicate hyperplane: {0}")]
    DuplicateHyperplane(String),
    #[error("empty hyperplane subset")]
    EmptySubset,
    #[error("hyperplane index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("duplicate root form at level {level}: roots {first} and {second}")]
    DuplicateRoot { level: usize, first: usize, second: usize },
    #[error("invalid level structure: {0}")]
    InvalidLevels(String),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("size cap exceeded: {what} is {actual}, cap is {cap}")]
    CapExceeded { what: &'static str, actual: usize, cap: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("element does not belong to this algebra: {0}")]
    ForeignElement(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
