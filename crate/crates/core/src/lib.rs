//! Solvers for the d-scattered set problem: choose as many vertices as
//! possible such that every pair is at shortest-path distance at least `d`.
//!
//! The crate bundles an exhaustive oracle, the size-bounded exact
//! enumeration, a ball-removal greedy, a Set Packing based approximation for
//! bipartite graphs, super-polynomial rho-approximations, reduction-based
//! instance generators and a tree-decomposition transform for power graphs.

pub mod bipartite;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod generate;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod reductions;
pub mod rho;
pub mod report;
pub mod treewidth;

pub use error::{Error, Result};
pub use feasibility::{is_scattered, size_upper_bound, ProblemInstance, SolutionSet};
pub use graph::{Graph, Vertex};

#[cfg(any(test, feature = "testkit"))]
pub mod testkit;
