//! Independent constructions used to check the assembled invariants: the
//! defining 3-j contraction (exact) and the spherical-variable formula
//! (floating point).

mod appendix;
mod definition;

pub use appendix::{
    appendix_eval, appendix_eval_with_tol, config_from_vectors, config_from_vectors_with_tol,
    jacobi, SphericalConfig, DEFAULT_COLLINEAR_TOL,
};
pub use definition::definition_invariant;
