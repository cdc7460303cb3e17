//! Community detection from the concept lattice of a social graph.
//!
//! The pipeline turns an undirected graph into a one-mode formal context
//! (adjacency matrix with a full diagonal), takes the concepts whose extent
//! equals their intent (these are exactly the maximal cliques), scores each
//! of them with the intensional stability index, drops the size-2 concepts
//! that behave like bridges between groups, keeps isolated cliques as
//! communities on their own and percolates the rest.
//!
//! ```
//! use coin::{detect_communities, CoinConfig, Graph};
//!
//! let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]);
//! let result = detect_communities(&g, &CoinConfig::default()).unwrap();
//! assert_eq!(result.len(), 2);
//! ```

pub mod bench;
pub mod cli;
pub mod detect;
pub mod error;
pub mod eval;
pub mod fca;
pub mod graph;
pub mod set;
pub mod stability;

pub use detect::{
    detect_communities, percolate, run_coin, stage1_filter, CoinConfig, CoinRun, Community,
    CommunityJson, CommunitySet, ComplexityReport, MergeSizes, Provenance,
};
pub use error::{CoinError, Result};
pub use eval::{confusion_matrix, nmi, validate_partition, ConfusionMatrix, Partition};
pub use fca::{
    build_one_mode_context, enumerate_concepts, extract_identical_concepts,
    fast_identical_concepts, ConceptSet, FormalConcept, FormalContext, IdenticalConcept,
};
pub use graph::{Graph, NodeId, NodeLabeling};
pub use set::NodeSet;
pub use stability::{
    classify, expected_isolated_stability, stability_exact, stability_sampled, Classification,
    SamplingConfig, ScoredConcept, StabilityValue,
};
