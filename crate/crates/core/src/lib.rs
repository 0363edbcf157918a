//! Vertex-disjoint path dualities for digraph-source sequences, with a
//! bramble-guided routing algorithm for the congestion-c disjoint paths problem.
//!
//! The three path variants (D, T and R) are solved by max-flow on auxiliary
//! digraphs in [`minmax`]; [`matroid`] and [`brute`] recompute the same
//! optima by independent routes. [`linkage`] builds the routing algorithm
//! on top of the R variant.

pub mod bramble;
pub mod brute;
pub mod crosscheck;
pub mod digraph;
pub mod dot;
pub mod error;
pub mod generate;
pub mod io;
pub mod linkage;
pub mod matroid;
pub mod menger;
pub mod minmax;

pub use digraph::{is_k_strong, shorten_walk, strong_components, Digraph, Path, VertexSet, Walk};
pub use error::{Error, Result};
pub use menger::{menger, min_separator_size, MengerCertificate};
pub use minmax::{
    Cut, DCut, DigraphSourceSequence, RCut, RespectingPathSet, SequenceEntry, SetFamily, TCut,
    Target, Variant,
};
