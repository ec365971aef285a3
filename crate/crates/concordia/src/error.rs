use std::fmt;

/// Default ceiling on the ambient group order for element-set operations
/// (subgroup enumeration, orthogonal complements, metabolizer search).
pub const DEFAULT_ORACLE_BOUND: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not normalizable: {0}")]
    NotNormalizable(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("resource limit: group order {order} exceeds oracle bound {bound}")]
    ResourceLimit { order: u128, bound: u64 },
}

impl Error {
    /// Process exit code used by the CLI: 1 for parse/semantic problems,
    /// 2 for unmet hypotheses, 3 for oracle resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::InvalidGroup(_)
            | Error::InvalidArgument(_)
            | Error::InvalidForm(_)
            | Error::Unsupported(_)
            | Error::NotNormalizable(_) => 1,
            Error::HypothesisNotMet(_) | Error::EmptyInput(_) => 2,
            Error::ResourceLimit { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
    UnsupportedFeature,
}

/// Parse failure with source position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, kind, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Semantic => "semantic error",
            ParseErrorKind::UnsupportedFeature => "unsupported feature",
        };
        write!(f, "{} at {}:{}: {}", what, self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

pub type Result<T> = std::result::Result<T, Error>;
