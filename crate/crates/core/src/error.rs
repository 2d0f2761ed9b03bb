use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series vanishes identically up to its truncation order")]
    ZeroSeries,

    #[error("series must have order {expected}, found {found}")]
    WrongOrder { expected: String, found: String },

    #[error("inner series of a composition must have order >= 1")]
    CompositionOrder,

    #[error("insufficient truncation: need {needed} known coefficients, have {available}")]
    InsufficientTruncation { needed: usize, available: usize },

    #[error("irregular arc: {0}")]
    Irregular(String),

    #[error("arcs are not tangent at the origin: {0}")]
    NotTangent(String),

    #[error("degenerate boundary: {0}")]
    Degenerate(String),

    #[error("invalid angle function: {0}")]
    InvalidAngle(String),

    #[error("argument {0} lies on a branch cut or at the origin")]
    BranchCut(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("adaptive quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("conformal map construction failed: {0}")]
    Zipper(String),

    #[error("parse error: {0}")]
    Parse(String),
}
