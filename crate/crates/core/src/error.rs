use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix does not match the filiform group pattern at entry ({row}, {col})")]
    PatternMatch { row: usize, col: usize },

    #[error("matrix logarithm leaves the filiform algebra at entry ({row}, {col})")]
    LogCoordinates { row: usize, col: usize },

    #[error("subspace is not closed under the bracket")]
    NotClosed,

    #[error("commutative subalgebra has no non-commutative normal form")]
    Commutative,

    #[error("invalid loop data: {0}")]
    InvalidSpec(String),

    #[error("matrix is not signed-symmetric: a[{i}][{j}] != (-1)^(i+j) a[{j}][{i}]")]
    NotSignedSymmetric { i: usize, j: usize },

    #[error("function must be nonlinear with zero constant term: {0}")]
    InvalidProfile(String),

    #[error("generated span did not stabilize: rank grew from {before} to {after} on probe samples")]
    Unstable { before: usize, after: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
