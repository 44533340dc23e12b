//! A combinatorial-rigidity laboratory.
//!
//! Certifies d-rigidity of graphs through the rank of the rigidity matrix at
//! random prime-field embeddings, computes d-closures, builds and verifies
//! strong d-rigid partitions and pseudocomplete colorings by randomized
//! constructions, and provides density/regularity audits for bipartite
//! pairs. Everything randomized is deterministic given its seed.

pub mod closure_comb;
pub mod error;
pub mod fp;
pub mod graph;
pub mod partition;
pub mod rank;
pub mod regularity;
pub mod rng;

pub use error::{Error, Result};
pub use graph::Graph;
