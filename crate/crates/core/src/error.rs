use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared variable `{name}` at line {line}, column {column}")]
    UndeclaredVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("duplicate target `{name}` at line {line}")]
    DuplicateTarget { name: String, line: usize },
    #[error("state space too large: {n} components exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("hull of an empty state set")]
    EmptyHull,
    #[error("component {0} is out of range")]
    UnknownComponent(usize),
    #[error("component {0} is not in the domain of the implicant map")]
    NotInDomain(usize),
    #[error("not an implicant map: {0}")]
    NotImplicantMap(String),
    #[error("implicant map is not {0}")]
    InconsistentMap(&'static str),
    #[error("({0}, {1}) is not an interaction of the network")]
    NotAnEdge(usize, usize),
    #[error("not a trap space: {0}")]
    NotTrapSpace(String),
    #[error("state {0} is not canonical for the extension")]
    NonCanonical(String),
    #[error("invalid threshold map: {0}")]
    InvalidThresholds(String),
    #[error("semantics `{0}` is not supported by this operation")]
    UnsupportedSemantics(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
