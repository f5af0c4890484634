use thiserror::Error;

/// Errors raised by cone, fan and search operations.
#[derive(Debug, Error)]
pub enum ToricError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("rows have inconsistent lengths")]
    RaggedMatrix,

    #[error("the zero vector has no primitive representative")]
    ZeroVector,

    #[error("ambient rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("a cone needs at least one generator")]
    EmptyGenerators,

    #[error("cone contains a line (not pointed)")]
    NotPointed,

    #[error("operation requires a simplicial cone")]
    NotSimplicial,

    #[error("operation requires a full-dimensional cone")]
    NotFullDimensional,

    #[error("cone is not Q-Gorenstein")]
    NotQGorenstein,

    #[error("operation requires rank {required}, cone has rank {found}")]
    RankUnsupported { required: usize, found: usize },

    #[error("cone is not terminal")]
    NotTerminal,

    #[error("fan is not a subdivision of the given cone")]
    NotSubdivision,

    #[error("fans have different supports")]
    SupportMismatch,

    #[error("point lies outside the support of the fan")]
    OutsideSupport,

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("family constraint violated ({kind}): {detail}")]
    FamilyConstraint { kind: &'static str, detail: String },

    #[error("verification failed: {0}")]
    CheckFailed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, ToricError>;
