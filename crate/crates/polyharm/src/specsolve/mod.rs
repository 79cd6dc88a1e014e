//! Laplace preimages from spectral derivatives, and the case constructions.

pub mod cases;
pub mod wmodel;

pub use cases::{construct_case, preimage_constant_weight, preimage_incoherent, CaseParams};
pub use wmodel::{build_w0, emit_form, solve_wd, GradedVector, WModel};
