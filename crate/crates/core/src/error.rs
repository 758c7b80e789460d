use thiserror::Error;

/// Errors raised by the engine. Identity violations are never errors; they
/// are reported as check entries.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate metric at {point:?}")]
    DegenerateMetric { point: Vec<f64> },

    #[error("jacobian has rank {rank} < {required} at {point:?}")]
    RankDeficient {
        rank: usize,
        required: usize,
        point: Vec<f64>,
    },

    #[error("vector is not vertical (horizontal component norm {residual:e})")]
    NotVertical { residual: f64 },

    #[error("vector is not horizontal (vertical component norm {residual:e})")]
    NotHorizontal { residual: f64 },

    #[error("vector does not lie in the slant distribution (residual {residual:e})")]
    NotInSlantDistribution { residual: f64 },

    #[error("slant angle undefined: {0}")]
    UndefinedAngle(String),

    #[error("unknown example '{id}'; valid ids: {valid}")]
    UnknownExample { id: String, valid: String },

    #[error("example '{0}' requires alpha in (0, pi/2)")]
    MissingAlpha(String),

    #[error("unknown condition '{id}'; valid ids: {valid}")]
    UnknownCondition { id: String, valid: String },

    #[error("unknown check '{id}'; run list-checks for valid ids")]
    UnknownCheck { id: String },
}

pub type Result<T> = std::result::Result<T, Error>;
