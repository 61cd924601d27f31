//! Sparse exact operators on tensor powers of `V`, Hecke symmetries, their
//! skew-inverses and R-traces, and Jucys–Murphy images.

mod context;
mod op;
mod skew;
mod symmetry;

pub use context::Symmetry;
pub use op::{dimension_cap, guard, set_dimension_cap, TensorOp};
pub use skew::{r_trace, r_trace_all, skew_inverse, trace_identity_residual, SkewData};
pub use symmetry::{
    check_braid, check_hecke, classical_limit, dj_r_matrix, dj_super_r_matrix, eigen_multiplicities, flip,
    r_matrix_from_json, super_flip,
};
