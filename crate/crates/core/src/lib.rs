//! Exact symbolic refinement of labeled graphs: square-and-substitute and
//! ordered-pair stabilization, walk-based description graphs, binding graphs,
//! equitable partitions, and a brute-force isomorphism oracle for auditing.
//!
//! Graphs are complete labeled graphs on `0..n`; label 0 is the blank (non-edge).

pub mod audit;
pub mod binding;
pub mod codebook;
pub mod descgraph;
mod error;
pub mod fixtures;
pub mod generators;
pub mod gi;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod refine;

pub use error::{Error, Result};
pub use graph::{
    dim, is_equivalent, is_imbedded, recognizes_edges, recognizes_vertices, DirectedLabeledGraph, LabelId, LabelMatrix,
    LabeledGraph, Permutation,
};
pub use partition::{vertex_partition, Partition};
pub use refine::{sas_stabilize, wl_stabilize, StabilizationTrace};
