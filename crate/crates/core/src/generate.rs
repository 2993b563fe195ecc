//! Seeded random graph generators. Each call draws from a fresh ChaCha8
//! stream seeded with `seed`, so equal arguments give equal graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

fn pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Erdos-Renyi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = pairs(n).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).expect("distinct pairs")
}

/// Random labeled tree (each vertex `v > 0` attaches to a uniform earlier
/// vertex) plus independent extra edges with probability `p`.
pub fn connected_random(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    edges.extend(pairs(n).filter(|_| rng.gen_bool(p)));
    Graph::from_edges_dedup(n, edges).expect("in range, no loops")
}

/// Random bipartite graph with sides `0..a` and `a..a+b`; each cross pair is
/// an edge with probability `p`.
pub fn bipartite_random(a: usize, b: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(a + b, edges).expect("distinct pairs")
}

/// Random graph of maximum degree at most `max_degree`: pairs are tried in
/// random order and kept with probability `p` while both ends have room.
pub fn bounded_degree_random(n: usize, max_degree: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<_> = pairs(n).collect();
    candidates.shuffle(&mut rng);
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if deg[u] < max_degree && deg[v] < max_degree && rng.gen_bool(p) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).expect("distinct pairs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_graph() {
        assert_eq!(gnp(12, 0.4, 3), gnp(12, 0.4, 3));
        assert_ne!(gnp(12, 0.4, 3), gnp(12, 0.4, 4));
        assert!(connected_random(10, 0.1, 9).m() >= 9);
        assert_eq!(gnp(5, 1.0, 0).m(), 10);
        assert_eq!(bipartite_random(2, 3, 1.0, 0).m(), 6);
    }
}
