//! Tree decompositions: validation, a min-degree elimination heuristic and
//! the transform that turns a decomposition of `G` into one of `G^d`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{moore_bound, truncated_bfs, Graph, Vertex};

/// Bags indexed by tree node plus the tree edges between nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
    width: usize,
}

impl TreeDecomposition {
    /// Sorts and deduplicates each bag, then checks that the nodes and edges
    /// form a tree (at least one node, connected, `nodes - 1` edges).
    pub fn new(bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let k = bags.len();
        if k == 0 {
            return Err(Error::InvalidDecomposition("no tree nodes".into()));
        }
        if edges.len() != k - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "{k} nodes need {} tree edges, got {}",
                k - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &edges {
            if a >= k || b >= k || a == b {
                return Err(Error::InvalidDecomposition(format!(
                    "bad tree edge ({a}, {b})"
                )));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if reach(&adj, 0, |_| true).iter().any(|&r| !r) {
            return Err(Error::InvalidDecomposition("tree is disconnected".into()));
        }
        let bags: Vec<Vec<Vertex>> = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        let width = bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1);
        Ok(TreeDecomposition { bags, edges, width })
    }

    /// Single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition::new(vec![g.vertices().collect()], Vec::new())
            .expect("one node is a tree")
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

fn reach<F: Fn(usize) -> bool>(adj: &[Vec<usize>], start: usize, allowed: F) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The first condition a decomposition fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// A bag names a vertex outside the graph.
    VertexOutOfRange { node: usize, vertex: Vertex },
    /// (a) The vertex is in no bag.
    VertexUncovered { vertex: Vertex },
    /// (b) No bag holds both endpoints.
    EdgeUncovered { u: Vertex, v: Vertex },
    /// (c) The bags holding `vertex` do not form a subtree: `from` cannot
    /// reach `to` through them.
    Disconnected { vertex: Vertex, from: usize, to: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} contains out-of-range vertex {vertex}")
            }
            Violation::VertexUncovered { vertex } => {
                write!(f, "(a) vertex {vertex} appears in no bag")
            }
            Violation::EdgeUncovered { u, v } => {
                write!(f, "(b) edge ({u}, {v}) is not contained in any bag")
            }
            Violation::Disconnected { vertex, from, to } => write!(
                f,
                "(c) bags {from} and {to} contain vertex {vertex} but are not connected through bags containing it"
            ),
        }
    }
}

/// Checks vertex coverage, edge coverage and the connected-subtree property,
/// in that order.
pub fn validate_decomposition(g: &Graph, t: &TreeDecomposition) -> std::result::Result<(), Violation> {
    let n = g.n();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (node, bag) in t.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Violation::VertexOutOfRange { node, vertex: v });
            }
            holders[v].push(node);
        }
    }
    if let Some(vertex) = (0..n).find(|&v| holders[v].is_empty()) {
        return Err(Violation::VertexUncovered { vertex });
    }
    for (u, v) in g.edges() {
        let covered = holders[u]
            .iter()
            .any(|&node| t.bags[node].binary_search(&v).is_ok());
        if !covered {
            return Err(Violation::EdgeUncovered { u, v });
        }
    }
    let adj = t.adjacency();
    for (vertex, nodes) in holders.iter().enumerate() {
        let from = nodes[0];
        let seen = reach(&adj, from, |x| t.bags[x].binary_search(&vertex).is_ok());
        if let Some(&to) = nodes.iter().find(|&&x| !seen[x]) {
            return Err(Violation::Disconnected { vertex, from, to });
        }
    }
    Ok(())
}

/// Expansion radius used for distance `d`: `ceil(d/2)`.
pub fn expansion_radius(d: usize) -> usize {
    d.div_ceil(2)
}

/// Bound on the width of [`power_decomposition`]'s output, in bag-size form:
/// `(w + 1) * (1 + moore_bound(delta, r)) - 1` with `r = ceil(d/2)`.
pub fn power_width_bound(input_width: usize, max_degree: usize, d: usize) -> u128 {
    let per_vertex = 1u128.saturating_add(moore_bound(max_degree, expansion_radius(d)));
    (input_width as u128 + 1).saturating_mul(per_vertex) - 1
}

/// Decomposition of `G^d` with the same tree: every vertex of every bag is
/// replaced by its closed `ceil(d/2)`-neighbourhood in `G`.
pub fn power_decomposition(g: &Graph, t: &TreeDecomposition, d: usize) -> Result<TreeDecomposition> {
    if d < 2 {
        return Err(Error::DistanceTooSmall(d));
    }
    validate_decomposition(g, t).map_err(|v| Error::InvalidDecomposition(v.to_string()))?;
    let r = expansion_radius(d);
    let balls: Vec<Vec<Vertex>> = g
        .vertices()
        .map(|v| {
            truncated_bfs(g, v, r)
                .into_iter()
                .enumerate()
                .filter_map(|(u, x)| x.map(|_| u))
                .collect()
        })
        .collect();
    let bags = t
        .bags
        .iter()
        .map(|bag| {
            bag.iter()
                .flat_map(|&v| balls[v].iter().copied())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    TreeDecomposition::new(bags, t.edges.clone())
}

/// Heuristic decomposition from a min-degree elimination order (ties to the
/// lowest id). The bag of an eliminated vertex holds it and its neighbours
/// in the fill graph; it hangs below the bag of the neighbour eliminated
/// next. Bags without such a neighbour are chained into a single tree.
pub fn min_degree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new()).expect("one node");
    }
    let mut fill: Vec<BTreeSet<Vertex>> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut position = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill[v].len(), v))
            .expect("a vertex remains");
        alive[v] = false;
        position[v] = step;
        order.push(v);
        let nbrs: Vec<Vertex> = fill[v].iter().copied().collect();
        for &a in &nbrs {
            fill[a].remove(&v);
            for &b in &nbrs {
                if a != b {
                    fill[a].insert(b);
                }
            }
        }
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
    }
    // Remaining neighbours at elimination time were all eliminated later.
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (step, bag) in bags.iter().enumerate() {
        let v = order[step];
        match bag.iter().filter(|&&u| u != v).map(|&u| position[u]).min() {
            Some(parent) => edges.push((step, parent)),
            None => roots.push(step),
        }
    }
    edges.extend(roots.windows(2).map(|w| (w[0], w[1])));
    TreeDecomposition::new(bags, edges).expect("elimination tree is a tree")
}
