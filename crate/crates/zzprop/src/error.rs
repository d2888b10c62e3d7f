use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rotation map: {0}")]
    InvalidRotmap(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("cap exceeded: {what} needs {need}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        need: usize,
        cap: usize,
    },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("element {elem} has degree {degree}, bound is {bound}")]
    DegreeOverflow {
        elem: usize,
        degree: usize,
        bound: usize,
    },
    #[error("pattern mismatch at vertex {vertex}: {msg}")]
    PatternMismatch { vertex: usize, msg: String },
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
