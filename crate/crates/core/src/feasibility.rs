//! Certification of candidate d-scattered sets and the component-wise size
//! bound that caps the enumeration solvers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, truncated_bfs, Graph, Vertex};

/// A graph together with the distance parameter `d >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    graph: Graph,
    d: usize,
}

impl ProblemInstance {
    pub fn new(graph: Graph, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DistanceTooSmall(d));
        }
        Ok(ProblemInstance { graph, d })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `floor(d / 2)`, the radius that drives most bounds.
    pub fn half(&self) -> usize {
        self.d / 2
    }
}

/// A vertex set with its feasibility verdict. Only [`is_scattered`] builds
/// these, so `certified` always reflects a real check against the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    vertices: Vec<Vertex>,
    certified: bool,
    witness: Option<(Vertex, Vertex)>,
}

impl SolutionSet {
    /// Sorted, deduplicated members.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    /// Lexicographically smallest pair at distance `< d`, if any.
    pub fn witness(&self) -> Option<(Vertex, Vertex)> {
        self.witness
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }
}

/// Checks that every pair of `s` is at distance at least `d`. Vertices in
/// different components are at infinite distance and never conflict.
pub fn is_scattered(inst: &ProblemInstance, s: &[Vertex]) -> Result<SolutionSet> {
    let g = inst.graph();
    for &v in s {
        g.check_vertex(v)?;
    }
    let mut vertices = s.to_vec();
    vertices.sort_unstable();
    vertices.dedup();

    let mut witness = None;
    for &u in &vertices {
        let dist = truncated_bfs(g, u, inst.d() - 1);
        let hit = vertices
            .iter()
            .copied()
            .find(|&w| w > u && dist[w].is_some());
        if let Some(w) = hit {
            witness = Some((u, w));
            break;
        }
    }
    Ok(SolutionSet {
        certified: witness.is_none(),
        witness,
        vertices,
    })
}

/// Per-component cap on the size of a d-scattered set in a connected graph
/// with `size` vertices: `floor(size / floor(d/2))`, raised to 1 for a
/// nonempty component (a single vertex is always feasible, even when the
/// quotient rounds down to 0).
pub fn component_bound(size: usize, d: usize) -> usize {
    if size == 0 {
        0
    } else {
        (size / (d / 2)).max(1)
    }
}

/// Sum of [`component_bound`] over the connected components.
pub fn size_upper_bound(inst: &ProblemInstance) -> usize {
    connected_components(inst.graph())
        .iter()
        .map(|c| component_bound(c.len(), inst.d()))
        .sum()
}
