use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("scalar kind mismatch")]
    KindMismatch,
    #[error("invalid permutation {0:?} for a tensor with {1} slots")]
    BadPermutation(Vec<usize>, usize),
    #[error("slot pair ({0}, {1}) out of range for a tensor with {2} slots")]
    SlotOutOfRange(usize, usize, usize),
    #[error("empty linear combination")]
    EmptyCombination,
    #[error("metric is not symmetric")]
    NotSymmetric,
    #[error("metric is singular at this point")]
    SingularMetric,
    #[error("metric inverse check failed (residual {0:e})")]
    BadInverse(f64),
    #[error("data length {0} does not match n^rank = {1}")]
    BadDataLength(usize, usize),
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("jet order {have} insufficient, need {need}")]
    InsufficientJetOrder { have: usize, need: usize },
    #[error("point {0:?} is not admissible for metric {1}")]
    InadmissiblePoint(Vec<f64>, String),
    #[error("all coefficients are zero")]
    ZeroCoefficients,
    #[error("unknown tensor name: {0}")]
    UnknownTensor(String),
    #[error("missing parameter `{param}` for tensor {tensor}")]
    MissingParam { tensor: String, param: String },
    #[error("coefficients do not form a generalized curvature tensor")]
    NotGct,
    #[error("linear combination is identically zero")]
    ZeroCombination,
    #[error("unknown metric: {0}")]
    UnknownMetric(String),
    #[error("unknown condition: {0}")]
    UnknownCondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
