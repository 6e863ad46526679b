use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    /// The input exceeds what an exhaustive routine is willing to enumerate.
    #[error("size limit: {0}")]
    SizeLimit(String),

    /// Parameters fall outside the domain where a formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested quantity could not be certified (e.g. search budget ran out).
    #[error("unavailable: {0}")]
    Unavailable(String),

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unexpected character {ch:?} at column {column}")]
    BadCharacter { ch: char, column: usize },
    #[error("expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("expected {expected} lines after the header, found {found}")]
    WrongLineCount { expected: usize, found: usize },
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("coordinate {value} out of range 1..={max}")]
    OutOfRange { value: i64, max: usize },
    #[error("not an integer: {0:?}")]
    NotInteger(String),
    #[error("empty input")]
    Empty,
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
