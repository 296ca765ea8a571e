//! Error type shared across the crate.

use thiserror::Error;

/// Result alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid trapezoid: expected a <= b <= c <= d, got ({a}, {b}, {c}, {d})")]
    InvalidTrapezoid { a: f64, b: f64, c: f64, d: f64 },

    #[error("invalid level grid: {0}")]
    InvalidGrid(String),

    #[error("invalid endpoint data: {0}")]
    InvalidEndpoints(String),

    #[error("membership grade {0} outside [0, 1]")]
    AlphaOutOfRange(f64),

    #[error("operand core has width {width:e}, not a singleton")]
    NonSingletonCore { width: f64 },

    #[error("arity mismatch: function takes {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("sampling density must be at least 2, got {0}")]
    InvalidDensity(usize),

    #[error("box extension over {points} sample points exceeds the evaluation budget")]
    TooManySamples { points: u128 },

    #[error("power hedge exponent must be at least 1")]
    InvalidHedgeExponent,

    #[error("an SLI basis needs at least 2 elements, got {0}")]
    BasisTooSmall(usize),

    #[error("cannot certify an empty element set")]
    EmptyBasis,

    #[error("basis must lead with crisp 1, found an element at distance {deviation:e} from it")]
    LeadingElementNotOne { deviation: f64 },

    #[error("generator is symmetric about {center}; power hedges of it cannot form an SLI set")]
    SymmetricGenerator { center: f64 },

    #[error("SLI certification failed: smallest singular value {sigma_min:e} <= threshold {threshold:e}")]
    SliRejected { sigma_min: f64, threshold: f64 },

    #[error("operands belong to different bases")]
    BasisMismatch,

    #[error("coordinate vector has length {got}, basis has {expected} elements")]
    CoordLength { expected: usize, got: usize },

    #[error("element with core {core:e} has no multiplicative inverse")]
    NoInverse { core: f64 },

    #[error("non-finite value encountered")]
    NonFiniteValue,

    #[error("invalid input file: {0}")]
    InvalidSpec(String),

    #[error("JSON error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
