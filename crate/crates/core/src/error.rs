use thiserror::Error;

/// Errors raised by the engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The element is zero down to its precision floor, so the requested
    /// quantity cannot be decided.
    #[error("precision exhausted: nothing is known above floor {floor}")]
    PrecisionExhausted { floor: i64 },

    #[error("sequence difference {index} has virtual dimension {dim}, not below its bound {bound}")]
    BoundViolated { index: usize, dim: i64, bound: i64 },

    #[error("bounds must be strictly decreasing (position {index})")]
    NotDecreasing { index: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("input polynomial is constant")]
    ConstantInput,

    #[error("order cannot be determined at truncation cap {cap}")]
    IndeterminateAtCap { cap: usize },

    #[error("cylinder measure needs a nonsingular ambient space")]
    SingularAmbient,

    #[error("no approximant has an error bound at or below floor {floor}")]
    InsufficientApproximants { floor: i64 },

    #[error("contact order {value} at position {index} is below 1")]
    BadContact { index: usize, value: u32 },

    #[error("index mismatch: {0}")]
    IndexMismatch(String),

    #[error("divergent exponent {exponent} on stratum `{stratum}`, component {component}")]
    DivergentExponent { stratum: String, component: u32, exponent: i64 },

    #[error("invalid level: cannot move from level {from} to {to}")]
    InvalidLevel { from: u32, to: u32 },

    #[error("invalid resolution data: {0}")]
    InvalidData(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax error with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
