use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("element is not in the span of the factor basis")]
    OutsideSpan,

    #[error("element is not a tripotent")]
    NotTripotent,

    #[error("unsupported factor: {0}")]
    Unsupported(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("scale condition violated in destination block {block}: {side} sum {sum} exceeds {bound}")]
    ScaleViolation {
        block: usize,
        side: &'static str,
        sum: u64,
        bound: u64,
    },

    #[error("sampling did not stabilize: {0}")]
    NotStabilized(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
