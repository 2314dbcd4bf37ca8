use std::fmt;

use thiserror::Error;

/// 1-based position inside parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    pub const fn new(line: usize, column: usize) -> Self {
        SourceSpan { line, column }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live over different variable sets")]
    RingMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("{span}: {message}")]
    Parse { span: SourceSpan, message: String },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("constant polynomial where a nonconstant one is required")]
    ConstantPolynomial,

    #[error("polynomial is not univariate")]
    NotUnivariate,

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("ideal is the unit ideal")]
    UnitIdeal,

    #[error("cannot eliminate every variable of the ring")]
    EliminateAll,

    #[error("empty polynomial list")]
    EmptyList,

    #[error("minor size {size} out of range 1..={max}")]
    MinorSize { size: usize, max: usize },

    #[error("ring arity {arity} exceeds the permutation search guard {max}")]
    ArityGuard { arity: usize, max: usize },

    #[error("inexact division")]
    InexactDivision,

    #[error("presentation step rejected: {0}")]
    Presentation(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(span: SourceSpan, message: impl Into<String>) -> Self {
        Error::Parse {
            span,
            message: message.into(),
        }
    }

    /// Span carried by a parse error, if any.
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            Error::Parse { span, .. } => Some(*span),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
