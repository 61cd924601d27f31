//! Exact coefficient arithmetic: rationals, Laurent polynomials in `q`,
//! canonical rational functions in `q`, and the mode-aware [`Scalar`].

mod laurent;
mod parse;
mod ratfunc;
mod rational;
mod scalar;

pub use laurent::LaurentPoly;
pub use parse::parse_scalar;
pub use ratfunc::RationalFunction;
pub use rational::{binomial, Rational};
pub use scalar::{QMode, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    Pole(Rational),
    #[error("scalars from different q-modes cannot be combined")]
    ModeMismatch,
    #[error("q0 = {0} is a root of unity or zero; generic q is required")]
    RootOfUnity(Rational),
    #[error("cannot parse scalar literal: {0}")]
    Parse(String),
}
