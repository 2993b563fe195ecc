//! Instance constructions: the reductions from Independent Set (path
//! attachment for even `d`, paths plus an edge clique for odd `d`), the
//! degree-bounded tree-gadget construction, cycle-plus-matching expanders and
//! the merge operation.
//!
//! Every random choice is drawn from ChaCha8 (`rand_chacha::ChaCha8Rng`)
//! seeded with `seed_from_u64(seed)`; each consumer selects its own stream
//! with `set_stream`, see [`stream_id`].

mod expander;
mod gadget;
mod independent_set;
mod merge;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

pub use expander::{cycle_plus_matching, random_matching};
pub use gadget::{gadget_tree_instance, GadgetConfig, GadgetInstance};
pub use independent_set::{reduce_is_even, reduce_is_odd};
pub use merge::{merge, Merged};

/// Relation claimed by the reductions in this module.
pub const RELATION_ALPHA_EQUALS_OPT: &str = "alpha(G)=OPT_d(H)";

/// Ties a produced instance back to its source graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    /// FNV-1a hash of the source vertex count and sorted edge list.
    pub source_fingerprint: u64,
    pub source_n: usize,
    pub source_m: usize,
    pub product_n: usize,
    /// `vertex_map[v]`: representative of source vertex `v` in the product.
    /// Injective.
    pub vertex_map: Vec<Vertex>,
    pub relation: String,
}

impl ReductionCertificate {
    fn new(source: &Graph, product: &Graph, vertex_map: Vec<Vertex>) -> Self {
        ReductionCertificate {
            source_fingerprint: fingerprint(source),
            source_n: source.n(),
            source_m: source.m(),
            product_n: product.n(),
            vertex_map,
            relation: RELATION_ALPHA_EQUALS_OPT.to_string(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.vertex_map.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// Stable 64-bit FNV-1a fingerprint of a graph.
pub fn fingerprint(g: &Graph) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(g.n() as u64);
    for (u, v) in g.edges() {
        feed(u as u64);
        feed(v as u64);
    }
    h
}

/// Stream used for the matching of height-level `level` in the gadget of
/// source vertex `gadget`. Stream 0 belongs to [`cycle_plus_matching`].
pub fn stream_id(gadget: Vertex, level: usize) -> u64 {
    ((gadget as u64 + 1) << 16) | level as u64
}

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
