use thiserror::Error;

use crate::biring::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}{}", kind.map(|k| format!(" under {k}")).unwrap_or_default())]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize), kind: Option<Kind> },

    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },

    #[error("matrix is singular: rank {rank} < {n}")]
    Singular { rank: usize, n: usize },

    #[error("linear system is inconsistent")]
    NoSolution,

    #[error("quasideterminant at ({i}, {j}) is undefined")]
    UndefinedQuasideterminant { i: usize, j: usize },

    #[error("scalar must be nonzero")]
    ZeroScalar,

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("solution rejected: {0}")]
    RejectedSolution(String),

    #[error("operation needs float coefficients")]
    UnsupportedMode,

    #[error("invalid argument: {0}")]
    Invalid(String),
}
