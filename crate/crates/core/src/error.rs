use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("boundary maps do not compose to zero")]
    NonCommutingComposition,
    #[error("division by zero in finite field")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} exceeds limit {limit}")]
    LimitExceeded { what: String, limit: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("word does not stabilize the base point")]
    WordDoesNotStabilize,
    #[error("quandle is not connected")]
    NotConnected,
    #[error("quandle is not presented as an Alexander quandle")]
    NotAlexander,
    #[error("quandle axiom {axiom} fails at {witness:?}")]
    AxiomViolation { axiom: &'static str, witness: Vec<usize> },
    #[error("inconsistent diagram: {0}")]
    InconsistentDiagram(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LimitExceeded { .. } | Error::Overflow => 3,
            Error::Consistency(_) | Error::NonCommutingComposition => 4,
            _ => 2,
        }
    }
}
