//! Minimum spanning-tree cover: find a spanning tree of a connected graph
//! whose minimum vertex cover is as small as possible.
//!
//! A set `S` covers some spanning tree exactly when the subgraph keeping only
//! edges incident to `S` is connected, so every solver here searches for a
//! smallest such set.

pub mod cliquewidth;
pub mod compare;
pub mod domination;
pub mod error;
pub mod generators;
pub mod graph;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod reduction;

pub use error::{Error, Result};
pub use graph::{Graph, SpanningTree, Vertex, VertexSet, Witness, WitnessKind};
