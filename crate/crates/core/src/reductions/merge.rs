use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Result of [`merge`] with the vertex maps of both inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merged {
    pub graph: Graph,
    /// `left[v]`: id of vertex `v` of the first graph (identity).
    pub left: Vec<Vertex>,
    /// `right[w]`: id of vertex `w` of the second graph.
    pub right: Vec<Vertex>,
    /// The identified vertex.
    pub merged: Vertex,
}

/// Identifies `v1` of `g1` with `v2` of `g2` and adds the edge
/// `(u[i], w[i])` for every position `i`.
///
/// `g1` keeps its ids and the identified vertex takes the id of `v1`; the
/// other vertices of `g2` follow in their original order. A cross edge that
/// would join the identified vertex to itself, or that repeats an existing
/// edge, is dropped.
pub fn merge(
    g1: &Graph,
    g2: &Graph,
    v1: Vertex,
    v2: Vertex,
    u: &[Vertex],
    w: &[Vertex],
) -> Result<Merged> {
    if u.len() != w.len() {
        return Err(Error::InvalidParameter(format!(
            "cross-edge lists differ in length ({} vs {})",
            u.len(),
            w.len()
        )));
    }
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    for &x in u {
        g1.check_vertex(x)?;
    }
    for &x in w {
        g2.check_vertex(x)?;
    }
    let n1 = g1.n();
    let left: Vec<Vertex> = g1.vertices().collect();
    let right: Vec<Vertex> = g2
        .vertices()
        .map(|x| match x.cmp(&v2) {
            std::cmp::Ordering::Equal => v1,
            std::cmp::Ordering::Less => n1 + x,
            std::cmp::Ordering::Greater => n1 + x - 1,
        })
        .collect();
    let edges = g1
        .edges()
        .chain(g2.edges().map(|(a, b)| (right[a], right[b])))
        .chain(u.iter().zip(w).map(|(&a, &b)| (left[a], right[b])))
        .filter(|(a, b)| a != b);
    let graph = Graph::from_edges_dedup(n1 + g2.n() - 1, edges)?;
    Ok(Merged {
        graph,
        left,
        right,
        merged: v1,
    })
}
