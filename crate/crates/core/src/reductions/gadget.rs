use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{diameter, power_graph, Diameter, Graph, Vertex};

use super::expander::random_matching;
use super::{rng_for, stream_id, ReductionCertificate};

/// Parameters of the tree-gadget construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GadgetConfig {
    pub d: usize,
    /// Maximum degree the source graph may have.
    pub max_source_degree: usize,
    /// Slack exponent, strictly between 0 and `floor(d/2)`.
    pub epsilon1: f64,
    pub seed: u64,
}

impl GadgetConfig {
    pub fn new(d: usize, max_source_degree: usize, epsilon1: f64, seed: u64) -> Result<Self> {
        if d < 4 {
            return Err(Error::UnsupportedDistance {
                d,
                reason: "the gadget construction needs d >= 4",
            });
        }
        if !(epsilon1 > 0.0 && epsilon1 < (d / 2) as f64) {
            return Err(Error::InvalidParameter(format!(
                "epsilon1 must lie in (0, {}), got {epsilon1}",
                d / 2
            )));
        }
        if max_source_degree < 2 {
            return Err(Error::InvalidParameter(
                "max source degree must be at least 2 so that the tree branches".into(),
            ));
        }
        Ok(GadgetConfig {
            d,
            max_source_degree,
            epsilon1,
            seed,
        })
    }

    fn half(&self) -> usize {
        self.d / 2
    }

    /// Branching factor: the least integer whose `floor(d/2)`-th power
    /// reaches the source degree bound.
    pub fn delta(&self) -> usize {
        let h = self.half() as u32;
        let mut delta = 2usize;
        while delta.saturating_pow(h) < self.max_source_degree {
            delta += 1;
        }
        delta
    }

    /// Exponent of the power overlay on the sparse height-levels:
    /// `ceil((1 + 2 eps1 / d) log2(delta))`.
    pub fn power_exponent(&self) -> usize {
        let x = (1.0 + 2.0 * self.epsilon1 / self.d as f64) * (self.delta() as f64).log2();
        (x.ceil() as usize).max(1)
    }

    /// `eps2 = 2 eps1 / d + log_delta(3)`.
    pub fn epsilon2(&self) -> f64 {
        2.0 * self.epsilon1 / self.d as f64 + 3f64.ln() / (self.delta() as f64).ln()
    }

    /// Levels strictly below `1 + eps2` become cliques.
    pub fn clique_threshold(&self) -> f64 {
        1.0 + self.epsilon2()
    }

    /// Height of each tree: `d/2 - 1` for even `d`, `floor(d/2)` for odd.
    pub fn height(&self) -> usize {
        if self.d.is_multiple_of(2) {
            self.half() - 1
        } else {
            self.half()
        }
    }

    /// Degree bound on the product: `delta + 3 delta^(1 + 2 eps1/d)` for even
    /// `d`, `6 delta^(1 + 2 eps1/d)` for odd `d`.
    pub fn degree_bound(&self) -> f64 {
        let delta = self.delta() as f64;
        let grown = delta.powf(1.0 + 2.0 * self.epsilon1 / self.d as f64);
        if self.d.is_multiple_of(2) {
            delta + 3.0 * grown
        } else {
            6.0 * grown
        }
    }
}

/// The product graph plus its layout.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetInstance {
    pub graph: Graph,
    /// Maps every source vertex to the root of its gadget.
    pub certificate: ReductionCertificate,
    pub config: GadgetConfig,
    /// `levels[v][i]`: product ids of height-level `i` of gadget `v`, in
    /// position order (children of position `p` sit at `p*delta ..`).
    pub levels: Vec<Vec<Vec<Vertex>>>,
}

impl GadgetInstance {
    /// Sorted vertex set of gadget `v` (shared leaves included).
    pub fn gadget_vertices(&self, v: Vertex) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.levels[v].iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Diameter of the subgraph induced by gadget `v`.
    pub fn gadget_diameter(&self, v: Vertex) -> Diameter {
        diameter(&self.graph.induced_subgraph(&self.gadget_vertices(v)))
    }

    /// True when every gadget has diameter at most its height.
    pub fn diameters_meet_bound(&self) -> bool {
        let target = self.config.height();
        (0..self.levels.len())
            .all(|v| matches!(self.gadget_diameter(v), Diameter::Finite(x) if x <= target))
    }

    pub fn meets_degree_bound(&self) -> bool {
        self.graph.max_degree() as f64 <= self.config.degree_bound() + 1e-9
    }
}

/// Builds one tree gadget per source vertex. The root has `delta` children
/// and every internal vertex one parent and `delta` children.
///
/// Even `d`: trees of height `d/2 - 1`; each leaf offers `delta` edge slots
/// and a source edge `(u, v)` becomes an edge between a leaf of `T(u)` and a
/// leaf of `T(v)`. Odd `d`: trees of height `floor(d/2)` with one leaf per
/// slot, and the two leaves standing for a source edge are identified.
/// Slots are assigned in increasing neighbour order; unused slots stay inert.
///
/// Each height-level below `1 + eps2` becomes a clique. Higher levels get a
/// cycle in position order plus a random matching (stream
/// [`stream_id`]`(v, level)`), and then the power-graph edges of that
/// cycle-plus-matching subgraph.
pub fn gadget_tree_instance(g: &Graph, cfg: &GadgetConfig) -> Result<GadgetInstance> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) > cfg.max_source_degree) {
        return Err(Error::InvalidParameter(format!(
            "source vertex {v} has degree {} > {}",
            g.degree(v),
            cfg.max_source_degree
        )));
    }
    let delta = cfg.delta();
    let height = cfg.height();
    let odd = cfg.d % 2 == 1;
    let n = g.n();

    let mut next_id = 0usize;
    let mut alloc = |k: usize| -> Vec<Vertex> {
        let ids = (next_id..next_id + k).collect();
        next_id += k;
        ids
    };

    // Internal levels (and, for even d, the leaves) get fresh ids per gadget.
    let own_levels = if odd { height } else { height + 1 };
    let mut levels: Vec<Vec<Vec<Vertex>>> = (0..n)
        .map(|_| (0..own_levels).map(|i| alloc(delta.pow(i as u32))).collect())
        .collect();

    let slot = |u: Vertex, v: Vertex| -> usize {
        g.neighbors(u)
            .binary_search(&v)
            .expect("v is a neighbour of u")
    };

    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut add = |a: Vertex, b: Vertex| {
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    };

    if odd {
        let leaf_count = delta.pow(height as u32);
        let mut leaves: Vec<Vec<Option<Vertex>>> = vec![vec![None; leaf_count]; n];
        for (u, v) in g.edges() {
            let shared = alloc(1)[0];
            leaves[u][slot(u, v)] = Some(shared);
            leaves[v][slot(v, u)] = Some(shared);
        }
        for (gadget, row) in levels.iter_mut().zip(leaves) {
            let level: Vec<Vertex> = row
                .into_iter()
                .map(|x| x.unwrap_or_else(|| alloc(1)[0]))
                .collect();
            gadget.push(level);
        }
    } else {
        for (u, v) in g.edges() {
            let a = levels[u][height][slot(u, v) / delta];
            let b = levels[v][height][slot(v, u) / delta];
            add(a, b);
        }
    }

    let threshold = cfg.clique_threshold();
    let exponent = cfg.power_exponent();
    for (v, gadget) in levels.iter().enumerate() {
        for i in 1..gadget.len() {
            for (p, &child) in gadget[i].iter().enumerate() {
                add(gadget[i - 1][p / delta], child);
            }
            let level = &gadget[i];
            if (i as f64) < threshold {
                for (a, &x) in level.iter().enumerate() {
                    for &y in &level[a + 1..] {
                        add(x, y);
                    }
                }
            } else {
                let k = level.len();
                let mut rng = rng_for(cfg.seed, stream_id(v, i));
                let local = (0..k)
                    .map(|j| (j, (j + 1) % k))
                    .chain(random_matching(k, &mut rng));
                let overlay = Graph::from_edges_dedup(k, local.filter(|(a, b)| a != b))?;
                for (a, b) in power_graph(&overlay, exponent)?.edges() {
                    add(level[a], level[b]);
                }
            }
        }
    }

    let graph = Graph::from_edges(next_id, edges)?;
    let roots = levels.iter().map(|gadget| gadget[0][0]).collect();
    let certificate = ReductionCertificate::new(g, &graph, roots);
    Ok(GadgetInstance {
        graph,
        certificate,
        config: *cfg,
        levels,
    })
}
