use thiserror::Error;

use crate::family::{FamilyKind, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("{family}: n={n} below minimum {min}")]
    BelowMinimum {
        family: FamilyKind,
        n: usize,
        min: usize,
    },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("labeling is for {found}, graph is {expected}")]
    IdentityMismatch { expected: String, found: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("graph is not column-banded: {0}")]
    NotBanded(String),

    #[error("combination does not telescope; residual {residual:?}")]
    NoTelescope { residual: Vec<String> },

    #[error("vertex {0} has no label")]
    MissingLabel(VertexId),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
