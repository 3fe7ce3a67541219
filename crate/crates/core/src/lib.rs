//! Exact solvers, kernelizations, polynomial special cases and instance
//! generators for Strong Triadic Closure (STC) and Cluster Deletion (CD)
//! on undirected graphs.
//!
//! STC asks for an edge labeling with at most k weak edges such that no
//! induced P3 carries two strong edges; CD destroys all induced P3s by at
//! most k edge deletions. Everything here is exact and cross-validated
//! against brute-force oracles on small instances.

pub mod gallai;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod kernel;
pub mod labeling;
pub mod matching;
pub mod oracle;
pub mod patterns;
pub mod result;
pub mod solvers_ell;
pub mod solvers_k;
pub mod special;

#[cfg(test)]
pub(crate) mod testutil;

pub use graph::{Graph, GraphError, Matching, MatchingKind, VertexSet};
pub use labeling::{DeletionSet, EdgeSet, Labeling, LabelingError};
pub use result::{Certificate, SolveResult, SolveStats};
