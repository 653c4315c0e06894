use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u8, right: u8 },

    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: u8, max: u8 },

    #[error("operation requires level-1 sign vectors, got max level {0}")]
    NotLevelOne(u8),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ground set of size {size} exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("not a decreasing chain of covectors: {0}")]
    NotAChain(String),

    #[error("not a face of the arrangement: {0}")]
    NotAFace(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid shuffle type: {0}")]
    InvalidComposition(String),

    #[error("{0} is not a subdivision of {1}")]
    NotSubdivision(String, String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("poset relation is cyclic")]
    CyclicPoset,

    #[error("boundary of boundary is nonzero: {0}")]
    BoundarySquareNonzero(String),

    #[error("cell structure inconsistency: {0}")]
    CellStructure(String),

    #[error("axiom violation: {0}")]
    Axiom(String),

    #[error("group action is not free: {0}")]
    NotFree(String),

    #[error("coefficients must be a field for this computation")]
    NotAField,

    #[error("missing face representative for {0}")]
    MissingRepresentative(String),

    #[error("parse error: {0}")]
    Parse(String),
}
