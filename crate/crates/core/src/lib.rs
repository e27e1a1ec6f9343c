//! Prices of symmetrisation for simple digraphs.
//!
//! The crate computes distance invariants of digraphs and compares them with
//! the same invariants on the symmetric closure. It also builds the extremal
//! families around the transmission price, checks closed forms against BFS,
//! and runs exhaustive and heuristic searches for maximisers.

mod bits;
pub mod closed_forms;
pub mod constructions;
pub mod distance;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod iso;
pub mod search;
pub mod transforms;

pub use distance::{all_pairs_distances, total_distance, DistanceMatrix};
pub use error::{Error, Result};
pub use graph::{Arrow, Digraph, Vertex, VertexSet};
pub use invariants::{price, Invariant, PriceReport, Rational};
pub use iso::{are_isomorphic, canonical_form, CanonicalForm};
