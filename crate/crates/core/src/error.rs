//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert the zero series")]
    ZeroInverse,
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("infinite product has a factor with nonpositive exponent {0}")]
    InfiniteProductExponent(String),
    #[error("exponent {0} fell below the configured floor {1}")]
    ExponentFloor(String, String),
    #[error("comparison order {0} exceeds a truncation order {1}")]
    TruncationExceeded(String, String),
    #[error("matrix is not positive definite: pivot {pivot} at index {index}")]
    NotPositiveDefinite { index: usize, pivot: String },
    #[error("AD is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("enumeration exceeded the hard bound of {0} lattice points")]
    EnumerationOverflow(u64),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("theta sum form disagrees with product form at exponent {0}")]
    ThetaMismatch(String),
    #[error("generalized eta indices (g,h) are both divisible by the level")]
    GenEtaZeroIndex,
    #[error("point is not in the upper half-plane")]
    NotUpperHalfPlane,
    #[error("Mobius map has a pole at the given point")]
    MobiusPole,
    #[error("square root of zero requested where a branch is needed")]
    ZeroSqrt,
    #[error("series evaluation did not converge: {0}")]
    NonConvergence(String),
    #[error("precision below 64 bits is not supported")]
    PrecisionTooLow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
