use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structure error: {0}")]
    Structure(String),

    #[error("term error: {0}")]
    Term(String),

    #[error("law error: {0}")]
    Law(String),

    #[error("polarization of degree {0} exceeds the limit of {max}", max = crate::laws::MAX_POLARIZATION_DEGREE)]
    PolarizationTooLarge(usize),

    #[error("letter {letter} is not allowed in the {ring} ring")]
    LetterNotAllowed { letter: String, ring: String },

    #[error("unknown overlap `{overlap}` for the {ring} ring")]
    UnknownOverlap { overlap: String, ring: String },

    #[error("expression is not in normal form: {0}")]
    NotNormal(String),

    #[error("word `{0}` matches no summand of the decomposition")]
    Unclassified(String),

    #[error("basis error: {0}")]
    Basis(String),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}
