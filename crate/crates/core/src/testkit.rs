//! Test oracles and instance generators. Compiled for tests and with the
//! `testkit` feature only.
//!
//! The oracles here are deliberately naive: plain subset enumeration over
//! Floyd-Warshall distances, sharing no code with the solvers.

use crate::bipartite::{collection_is_disjoint, SetPackingInstance};
use crate::graph::{Graph, Vertex};

pub use crate::generate::{bipartite_random, bounded_degree_random, connected_random, gnp};

/// All-pairs distances by Floyd-Warshall; `None` means unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut dist = vec![vec![None; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for (u, v) in g.edges() {
        dist[u][v] = Some(1);
        dist[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = dist[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = dist[k][j] {
                    if dist[i][j].is_none_or(|x| ik + kj < x) {
                        dist[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    dist
}

/// Pairwise check of the distance condition on a subset.
pub fn naive_is_scattered(dist: &[Vec<Option<usize>>], s: &[Vertex], d: usize) -> bool {
    s.iter().enumerate().all(|(i, &u)| {
        s[i + 1..]
            .iter()
            .all(|&v| u != v && dist[u][v].is_none_or(|x| x >= d))
    })
}

/// Maximum d-scattered set size by trying all `2^n` subsets (n <= 24).
pub fn naive_opt(g: &Graph, d: usize) -> usize {
    let n = g.n();
    assert!(n <= 24, "naive oracle limited to 24 vertices");
    let dist = floyd_warshall(g);
    let close: Vec<u32> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && dist[v][u].is_some_and(|x| x < d))
                .fold(0, |m, u| m | 1 << u)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || close[v] & s == 0))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

/// Independence number (the `d = 2` case).
pub fn naive_alpha(g: &Graph) -> usize {
    naive_opt(g, 2)
}

/// Largest number of pairwise disjoint sets, by trying every sub-collection.
pub fn naive_max_packing(sp: &SetPackingInstance) -> usize {
    let k = sp.sets.len();
    assert!(k <= 24, "naive packing oracle limited to 24 sets");
    (0u32..1 << k)
        .filter_map(|mask| {
            let tags: Vec<Vertex> = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| sp.sets[i].tag)
                .collect();
            collection_is_disjoint(sp, &tags).then_some(tags.len())
        })
        .max()
        .unwrap_or(0)
}

/// Every labeled graph on `n` vertices (`2^(n(n-1)/2)` of them), in order of
/// the edge bitmask over lexicographically ordered pairs.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many labeled graphs");
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("distinct pairs")
    })
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || floyd_warshall(g)[0].iter().all(Option::is_some)
}

pub fn all_connected_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    all_labeled_graphs(n).filter(is_connected)
}
