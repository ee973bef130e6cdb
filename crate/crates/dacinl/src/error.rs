use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the simulation and analytics layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("resolution must be between 1 and 30 bits, got {0}")]
    ResolutionOutOfRange(u32),

    #[error("invalid DAC spec: {0}")]
    InvalidSpec(String),

    #[error("current vector is empty")]
    EmptyCurrents,

    #[error("current vector contains a non-finite value")]
    NonFiniteCurrent,

    #[error("current vector has {0} entries; expected 2^N - 1 for some N in 1..=30")]
    InvalidUnitCount(usize),

    #[error("segmentation {segmentation} exceeds resolution {bits}")]
    InvalidSegmentation { segmentation: u32, bits: u32 },

    #[error("i_lsb must be positive and finite, got {0}")]
    NonPositiveLsb(f64),

    #[error("sigma_u must be positive for this operation")]
    ZeroSigma,

    #[error("probability must lie strictly inside (0, 1), got {0}")]
    InvalidProbability(f64),

    #[error("tolerance {value} outside the supported range for {name}")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("{name} must be non-negative, got {value}")]
    NegativeArgument { name: &'static str, value: f64 },

    #[error("{name} must be at least {min}, got {got}")]
    OrderTooSmall { name: &'static str, min: usize, got: usize },

    #[error("{name} = {got} exceeds the supported maximum {max}; {hint}")]
    OrderTooLarge {
        name: &'static str,
        got: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("block indices must differ for the correlation coefficient")]
    EqualBlockIndices,

    #[error("correlation coefficient must lie in [-1, 1], got {0}")]
    InvalidCorrelation(f64),

    #[error("frequency |k| = {0} exceeds the stable evaluation range (|k| <= 30)")]
    FrequencyOutOfRange(f64),

    #[error("kernel bandwidth must be positive and finite, got {0}")]
    DegenerateBandwidth(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("architectures must share the same resolution: {a} vs {b} bits")]
    MismatchedResolution { a: u32, b: u32 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
