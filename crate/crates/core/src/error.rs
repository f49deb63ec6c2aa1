use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("strand-count mismatch at slice {slice}: expected {expected}, found {found}")]
    StrandMismatch {
        slice: usize,
        expected: usize,
        found: usize,
    },

    #[error("negative exponent on non-invertible generator {0}")]
    NotLaurent(&'static str),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("{what} bound exceeded: {value} > {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("invalid position {position} for `{prim}` on {strands} strands")]
    InvalidPosition {
        prim: &'static str,
        position: usize,
        strands: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("h is not diagonal: {0}")]
    NotDiagonal(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("truncation too shallow: {0}")]
    Truncation(String),

    #[error("expansion too large: {terms} terms exceeds limit {limit}")]
    ExpansionTooLarge { terms: usize, limit: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
