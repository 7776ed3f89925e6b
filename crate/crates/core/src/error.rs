use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite operand")]
    NonFinite,
    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pfaffian requires even dimension, got {0}")]
    OddDimension(usize),
    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },
    #[error("oracle size cap: dimension {0} exceeds 12")]
    OracleSizeCap(usize),
    #[error("invalid index set: {0}")]
    InvalidIndices(String),

    #[error("argument too large")]
    ArgumentTooLarge,
    #[error("theta series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("invalid bracket parameters: {0}")]
    InvalidBracket(String),
    #[error("bracket kind cannot be evaluated over exact rationals")]
    NotExact,

    #[error("coincident points")]
    CoincidentPoints,
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("schur oracles disagree")]
    OracleDisagreement,

    #[error("pole at sample: {0}")]
    Pole(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sampler starvation after {0} attempts")]
    SamplerStarvation(usize),
    #[error("unknown identity `{name}`; valid names: {valid}")]
    UnknownIdentity { name: String, valid: String },
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// True for errors that only mean the sample point was inadmissible.
    pub fn is_resample(&self) -> bool {
        matches!(
            self,
            Error::Pole(_) | Error::CoincidentPoints | Error::DivisionByZero
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
