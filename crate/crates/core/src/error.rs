use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("lower parameter {0} is zero or a negative integer")]
    InvalidLowerParameter(String),

    #[error("expected {expected} upper parameters for {lower} lower parameters, got {got}")]
    ParameterShape {
        expected: usize,
        lower: usize,
        got: usize,
    },

    #[error("identity {identity} takes {expected} parameters, got {got}")]
    ParameterCount {
        identity: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("inner series has nonzero constant term {0}")]
    NonZeroConstantTerm(String),

    #[error("series power needs constant term 1, got {0}")]
    ConstantTermNotOne(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("value is not an integer: {0}")]
    NotIntegral(String),

    #[error("sequence of length {len} does not cover index {index}")]
    SequenceTooShort { len: usize, index: i64 },

    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),

    #[error("series diverges or tail bound unavailable: {0}")]
    Divergent(String),

    #[error("precision exhausted: {0}")]
    PrecisionLoss(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
