//! Quiver representations, cyclic modules and the bridge from Harish-Chandra fragments.

mod build;
mod hc;

pub use build::{
    build_cyclic_module, classify_cyclic, endomorphism_top_dimension, endomorphisms, generated_dimension,
    invariants_of, is_cyclic, CyclicCase, CyclicClass, Invariants, NodeType, Quiver, QuiverRep, CYCLIC_TRIALS,
};
pub use hc::{
    hc_to_quiver, iso_two_descriptions, random_consistent_fragment, second_description, HCFragment, IsoWitness,
};
