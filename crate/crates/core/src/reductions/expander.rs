use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

use super::rng_for;

/// Uniformly random partition of `0..n` into pairs (one singleton left over
/// when `n` is odd): shuffle, then pair consecutive entries.
pub fn random_matching<R: Rng>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    order.chunks_exact(2).map(|p| (p[0], p[1])).collect()
}

/// The `n`-cycle `0, 1, ..., n-1` plus a random perfect matching drawn from
/// stream 0 of `seed`. Matching pairs that coincide with cycle edges are
/// merged, so the graph stays simple.
pub fn cycle_plus_matching(n: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle-plus-matching needs n >= 3, got {n}"
        )));
    }
    let mut rng = rng_for(seed, 0);
    let matching = random_matching(n, &mut rng);
    let cycle = (0..n).map(|i| (i, (i + 1) % n));
    Graph::from_edges_dedup(n, cycle.chain(matching))
}
