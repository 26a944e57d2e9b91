use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator index {index} out of range for a simplex of dimension {dim}")]
    OperatorIndex { index: usize, dim: usize },

    #[error("invalid simplicial set `{name}`: {reason}")]
    InvalidSimplicialSet { name: String, reason: String },

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coefficient group mismatch: {0}")]
    GroupMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("tower provides stages up to {available}, but stage {required} is required")]
    MissingStage { required: usize, available: usize },

    #[error("the tower has no zero section")]
    MissingSection,

    #[error("prescribed data is inconsistent: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown catalog tower `{0}`")]
    UnknownCatalog(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
