use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    /// An intermediate or final value is not representable as a finite `f64`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A moment of the requested order is infinite for the given shape.
    #[error("moment of order {order} does not exist for alpha = {alpha} (requires order < alpha)")]
    MomentDoesNotExist { order: f64, alpha: f64 },

    #[error("survival probability underflows to zero at y = {0}")]
    DegenerateSurvival(f64),

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("dataset is empty")]
    EmptyData,

    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
