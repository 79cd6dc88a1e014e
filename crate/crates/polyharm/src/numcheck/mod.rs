//! Floating-point checks of the operator identities inside the region of absolute convergence.

mod fd;
mod series;
mod verify;

pub use fd::{fd_operator, FdOp, Monomial, MonomialSum};
pub use series::{
    character_weight, eval_character_eisenstein, eval_eisenstein, eval_eisenstein_extrapolated, kronecker,
    truncation_estimate, EvalConfig, SamplePoint,
};
pub use verify::{
    basis_pairs, default_samples, eisenstein_pairs, incoherent_pairs, run_suite, verify_identity, verify_pairs,
    Identity, Report, Residual, Sample, Suite, BASIS_TOLERANCE,
};
