use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("tensor dimension {size} = {n}^{k} exceeds the guard {cap}; raise RECALC_CAP_SITES to allow it")]
    DimensionGuard { n: usize, k: usize, size: usize, cap: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("R is not skew-invertible: {0}")]
    NotSkewInvertible(String),
    #[error("{what} degree {degree} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, degree: usize, cap: usize },
    #[error("permutation relations cannot be solved for the cross terms: {0}")]
    SingularPermutation(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
