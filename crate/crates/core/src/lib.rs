//! Exact computer algebra for reflection equation algebras built from Hecke
//! symmetries, their quantum doubles, and the identities relating quantum
//! differential operators on them.

pub mod arith;
pub mod charsub;
pub mod double;
pub mod error;
pub mod exec;
pub mod hecke;
pub mod linalg;
pub mod ncalg;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
