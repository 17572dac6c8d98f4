use thiserror::Error;

/// Errors raised by the number-family engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A guarded theta factor (or other parameter-dependent denominator)
    /// is too close to zero.
    #[error("degenerate parameters: {factor} has modulus {modulus:.3e}")]
    DegenerateParameters { factor: String, modulus: f64 },

    /// Two sequence values that must be distinct coincide, or a
    /// denominator built from sequence values vanishes.
    #[error("degenerate sequence: {0}")]
    DegenerateSequence(String),

    /// An explicit sequence was accessed outside its declared window.
    #[error("index {index} is outside the sequence window [{lo}, {hi}]")]
    OutOfWindow { index: i64, lo: i64, hi: i64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
