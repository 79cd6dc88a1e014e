//! Formal calculus of weight-graded forms built from polynomial and spectral atoms.
//!
//! Distinct atoms are treated as linearly independent; the only relations used are those in
//! the coincidence [`table`].

pub mod atoms;
pub mod display;
pub mod form;
pub mod ops;
pub mod table;

pub use atoms::{Dir, Family, FamilySymbol, Pending, PolyAtom, SpectralAtom};
pub use display::pretty;
pub use form::Form;
pub use ops::{expand, flip, is_zero, laplace, laplace_pow, lower, lower_pow, mirror, raise, raise_pow};
