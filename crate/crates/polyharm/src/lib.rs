//! Exact symbolic engine for polyharmonic weak Maaß forms.
//!
//! * [`symcalc`]: forms, the raising, lowering and Laplace operators, mirror and flip.
//! * [`specsolve`]: the graded solver producing Laplace preimages, and case constructions.
//! * [`classify`]: exact depth and the ten-case labelling.
//! * [`quiverrep`]: cyclic modules over the Gelfand and two-cyclic quivers.
//! * [`numcheck`]: floating point checks of the analytic identities.

pub mod classify;
pub mod linalg;
pub mod numcheck;
pub mod quiverrep;
pub mod scalar;
pub mod specsolve;
pub mod symcalc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index out of range: r = {r} with m = {m}")]
    IndexOutOfRange { m: u32, r: u32 },
    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: i64, found: i64 },
    #[error("{0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not polyharmonic within depth bound {0}")]
    DepthBound(u32),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("outside convergence region: {0}")]
    Convergence(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
