use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("poset is not antisymmetric: {0} and {1} are mutually related")]
    NotAntisymmetric(String, String),

    #[error("labels are not monotone along edge {edge}: {source_label} is not <= {target_label}")]
    NonMonotoneEdge { edge: String, source_label: String, target_label: String },

    #[error("simplicial identity fails at generator {generator}: {detail}")]
    SimplicialIdentity { generator: String, detail: String },

    #[error("map does not commute with faces at generator {generator}: {detail}")]
    NotSimplicial { generator: String, detail: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("level bound {bound} too small: {needed} required")]
    LevelBound { bound: usize, needed: usize },

    #[error("unresolved reference to {kind} '{name}'")]
    Unresolved { kind: &'static str, name: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
