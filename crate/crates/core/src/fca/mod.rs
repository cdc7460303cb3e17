//! Formal contexts, derivation operators and concept enumeration.

mod concepts;
mod context;

pub use concepts::{
    enumerate_concepts, enumerate_concepts_with_limit, extract_identical_concepts,
    fast_identical_concepts, ConceptSet, FormalConcept, IdenticalConcept, DEFAULT_OBJECT_LIMIT,
};
pub use context::{build_one_mode_context, FormalContext};
