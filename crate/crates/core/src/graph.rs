//! Immutable undirected simple graphs and the distance primitives the solvers
//! are built on: breadth-first distances, open r-neighbourhoods, power graphs,
//! diameter, connected components and 2-colourings.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex id in `0..n`.
pub type Vertex = usize;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate edges
    /// (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            check_endpoints(n, u, v)?;
            if !seen.insert(ordered(u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_normalized(n, seen))
    }

    /// Like [`Graph::from_edges`] but silently merges duplicate edges.
    /// Self-loops and out-of-range endpoints are still errors.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            check_endpoints(n, u, v)?;
            seen.insert(ordered(u, v));
        }
        Ok(Self::from_normalized(n, seen))
    }

    fn from_normalized(n: usize, edges: BTreeSet<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let m = edges.len();
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj, m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Maximum degree, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]` of `self`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = BTreeSet::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.insert((i, j));
                }
            }
        }
        Self::from_normalized(vertices.len(), edges)
    }
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_endpoints(n: usize, u: Vertex, v: Vertex) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

/// Hop distances from a single source. Unreachable vertices hold `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: Vertex,
    pub dist: Vec<Option<usize>>,
}

impl DistanceRow {
    pub fn get(&self, v: Vertex) -> Option<usize> {
        self.dist[v]
    }

    /// True when `v` is reachable and strictly closer than `d`.
    pub fn within(&self, v: Vertex, d: usize) -> bool {
        matches!(self.dist[v], Some(x) if x < d)
    }
}

/// Exact unweighted shortest-path distances from `source`.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Result<DistanceRow> {
    g.check_vertex(source)?;
    Ok(DistanceRow {
        source,
        dist: truncated_bfs(g, source, usize::MAX),
    })
}

/// BFS that stops expanding past `depth`; vertices beyond it are `None`.
pub(crate) fn truncated_bfs(g: &Graph, source: Vertex, depth: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices are labelled");
        if du >= depth {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Vertices within distance `r` of `source` (excluding `source`), sorted.
pub(crate) fn ball(g: &Graph, source: Vertex, r: usize) -> Vec<Vertex> {
    truncated_bfs(g, source, r)
        .into_iter()
        .enumerate()
        .filter_map(|(u, d)| matches!(d, Some(x) if x > 0).then_some(u))
        .collect()
}

/// Open r-neighbourhood `{u != v : d(v, u) <= r}`, sorted ascending.
pub fn neighborhood(g: &Graph, v: Vertex, r: usize) -> Result<Vec<Vertex>> {
    g.check_vertex(v)?;
    Ok(ball(g, v, r))
}

/// All-pairs distances, one BFS per source.
pub fn all_pairs(g: &Graph) -> Vec<DistanceRow> {
    g.vertices()
        .map(|s| DistanceRow {
            source: s,
            dist: truncated_bfs(g, s, usize::MAX),
        })
        .collect()
}

/// The q-th power: same vertices, an edge between every pair at distance
/// `1..=q` in `g`.
pub fn power_graph(g: &Graph, q: usize) -> Result<Graph> {
    if q == 0 {
        return Err(Error::InvalidParameter("power exponent must be >= 1".into()));
    }
    let mut edges = BTreeSet::new();
    for s in g.vertices() {
        for u in ball(g, s, q) {
            if s < u {
                edges.insert((s, u));
            }
        }
    }
    Ok(Graph::from_normalized(g.n(), edges))
}

/// Diameter of a graph; `Infinite` when it is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(x) => Some(x),
            Diameter::Infinite => None,
        }
    }
}

pub fn diameter(g: &Graph) -> Diameter {
    let mut best = 0;
    for s in g.vertices() {
        for d in truncated_bfs(g, s, usize::MAX) {
            match d {
                Some(x) => best = best.max(x),
                None => return Diameter::Infinite,
            }
        }
    }
    Diameter::Finite(best)
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A proper 2-colouring; both sides sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

/// 2-colouring where the lowest id of every component lands in `a`, or
/// `None` if some component has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<Bipartition> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are coloured");
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (v, s) in side.into_iter().enumerate() {
        if s == Some(false) {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    Some(Bipartition { a, b })
}

/// Moore bound `delta * sum_{i=0}^{r-1} (delta-1)^i` on the size of an open
/// r-neighbourhood in a graph of maximum degree `delta`.
pub fn moore_bound(delta: usize, r: usize) -> u128 {
    let delta = delta as u128;
    let mut term: u128 = 1;
    let mut sum: u128 = 0;
    for _ in 0..r {
        sum = sum.saturating_add(term);
        term = term.saturating_mul(delta.saturating_sub(1));
    }
    delta.saturating_mul(sum)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
}

/// Cycle on `n >= 3` vertices; smaller `n` gives a path.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("clique edges are simple")
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfs_on_small_graphs() {
        let row = bfs_distances(&path(3), 0).unwrap();
        assert_eq!(row.dist, vec![Some(0), Some(1), Some(2)]);
        assert_eq!(bfs_distances(&Graph::new(1), 0).unwrap().dist, vec![Some(0)]);
        assert_eq!(bfs_distances(&cycle(8), 0).unwrap().get(4), Some(4));
        assert_eq!(
            bfs_distances(&Graph::new(2), 0).unwrap().dist,
            vec![Some(0), None]
        );
        assert!(matches!(
            bfs_distances(&path(3), 3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(1, 0))
        );
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        let g = Graph::from_edges_dedup(3, [(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn neighborhoods() {
        assert_eq!(neighborhood(&path(5), 2, 1).unwrap(), vec![1, 3]);
        assert!(neighborhood(&cycle(8), 3, 0).unwrap().is_empty());
        assert_eq!(neighborhood(&cycle(8), 0, 2).unwrap(), vec![1, 2, 6, 7]);
    }

    #[test]
    fn powers() {
        let c8 = cycle(8);
        assert_eq!(power_graph(&c8, 1).unwrap(), c8);
        let c6sq = power_graph(&cycle(6), 2).unwrap();
        assert!(c6sq.vertices().all(|v| c6sq.degree(v) == 4));
        assert!(!c6sq.has_edge(0, 3));
        assert_eq!(power_graph(&path(5), 4).unwrap(), complete(5));
        assert!(power_graph(&c8, 0).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&cycle(8)), Diameter::Finite(4));
        assert_eq!(diameter(&complete(4)), Diameter::Finite(1));
        assert_eq!(diameter(&Graph::new(2)), Diameter::Infinite);
        assert_eq!(diameter(&Graph::new(0)), Diameter::Finite(0));
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&path(3)), vec![vec![0, 1, 2]]);
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(connected_components(&g), vec![vec![0, 1, 2], vec![3]]);
        assert!(connected_components(&Graph::new(0)).is_empty());
    }

    #[test]
    fn two_colourings() {
        let bp = bipartition(&cycle(8)).unwrap();
        assert_eq!(bp.a, vec![0, 2, 4, 6]);
        assert_eq!(bp.b, vec![1, 3, 5, 7]);
        assert!(bipartition(&cycle(5)).is_none());
        let bp = bipartition(&path(4)).unwrap();
        assert_eq!((bp.a, bp.b), (vec![0, 2], vec![1, 3]));
        // lowest id of each component goes to side A
        let g = Graph::from_edges(4, [(1, 2), (0, 3)]).unwrap();
        let bp = bipartition(&g).unwrap();
        assert_eq!((bp.a, bp.b), (vec![0, 1], vec![2, 3]));
    }

    #[test]
    fn induced() {
        let g = cycle(6);
        let h = g.induced_subgraph(&[0, 1, 2, 4]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn moore() {
        assert_eq!(moore_bound(3, 0), 0);
        assert_eq!(moore_bound(3, 1), 3);
        assert_eq!(moore_bound(3, 2), 3 + 6);
        assert_eq!(moore_bound(2, 5), 10);
    }
}
