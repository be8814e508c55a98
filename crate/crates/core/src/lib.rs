//! Global minimum cut of weighted directed planar graphs.
//!
//! The library computes the shortest directed cycle of an embedded planar
//! graph by recursively dividing along shortest-path separators, finding the
//! cycles that cross a separator path with a divide-and-conquer over the
//! path, and recovers the global minimum cut of a strongly connected graph as
//! a shortest cycle in the dual. Brute-force oracles, an r-division with
//! dense distance graphs, instance generators, and graph file I/O round out
//! the crate.

pub mod cfn;
pub mod ddg;
pub mod embed;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod paths;
pub mod reif;
pub mod scc;
pub mod separator;
pub mod surgery;
#[cfg(test)]
pub(crate) mod testutil;
pub mod weight;

pub use cfn::{min_cut, shortest_cycle, CfnOptions, Cut, CutError, MinCutResult};
pub use embed::{
    cut_dual, dual, triangulate_infinite, DartId, DualEmbedding, EdgeSpec, EmbedError, Embedding,
    FaceId, Triangulation, VertexId,
};
pub use paths::{DirectedCycle, DirectedPath, ShortestPathTree};
pub use weight::Weight;
