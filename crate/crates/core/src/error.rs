use thiserror::Error;

use crate::mhs::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("filtration is not monotone or not exhaustive: {0}")]
    Filtration(String),

    #[error("not a mixed Hodge structure: {0}")]
    NotMhs(ValidationReport),

    #[error("subspace does not underlie a sub-MHS: {0}")]
    NotSubobject(ValidationReport),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("invalid section data: {0}")]
    InvalidSection(String),

    #[error("not a morphism of mixed Hodge structures: {0}")]
    NotMorphism(String),

    #[error("mixed Hodge structure is not associated to the triple: {0}")]
    NotAssociated(String),

    #[error("degenerate weight cut p = {p}: W_p or M/W_p is zero")]
    Degenerate { p: i32 },

    #[error("outside the rank-one graded-Tate regime: {0}; use splits_mod with explicit candidates")]
    Regime(String),

    #[error("tensor space of dimension {dim} exceeds the resource limit {limit}")]
    ResourceGuard { dim: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn dim(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected,
            found,
        }
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Prefixes the location of a parse error with an enclosing field name.
    pub fn at(self, field: &str) -> Self {
        match self {
            Error::Parse { path, message } => {
                let path = if path.is_empty() {
                    field.to_string()
                } else {
                    format!("{field}.{path}")
                };
                Error::Parse { path, message }
            }
            other => other,
        }
    }
}
