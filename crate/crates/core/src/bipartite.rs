//! Approximation for bipartite graphs and even `d >= 4` through one-sided
//! Set Packing instances.
//!
//! For one side `A`, every `a in A` becomes a set holding the elements whose
//! vertex lies within distance `d/2 - 1` of `a`. When `d/2` is even the
//! elements are the vertices of the other side `B`; when `d/2` is odd there is
//! additionally one element per vertex of `A` (and `a`'s own element belongs
//! to its set). Disjoint collections of sets then correspond exactly to
//! d-scattered subsets of `A`. Solving both sides with a greedy packing and
//! keeping the larger answer gives the overall approximation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{is_scattered, ProblemInstance, SolutionSet};
use crate::graph::{bipartition, truncated_bfs, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// The side whose vertices become sets.
    SetSide,
    /// The opposite side.
    ElementSide,
}

/// Provenance of a packing element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementTag {
    pub vertex: Vertex,
    pub side: Side,
}

/// A packing set together with the set-side vertex it stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingSet {
    pub tag: Vertex,
    /// Sorted element ids.
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPackingInstance {
    /// `elements[e]` is the provenance of element `e`.
    pub elements: Vec<ElementTag>,
    /// Sets in increasing tag order; tags are distinct.
    pub sets: Vec<PackingSet>,
}

impl SetPackingInstance {
    /// Checks that every referenced element exists and tags are distinct.
    pub fn validate(&self) -> Result<()> {
        let mut tags: Vec<Vertex> = self.sets.iter().map(|s| s.tag).collect();
        tags.sort_unstable();
        if tags.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("duplicate set tag".into()));
        }
        if let Some(e) = self
            .sets
            .iter()
            .flat_map(|s| s.elements.iter())
            .find(|&&e| e >= self.elements.len())
        {
            return Err(Error::InvalidParameter(format!("unknown element {e}")));
        }
        Ok(())
    }

    pub fn set_by_tag(&self, tag: Vertex) -> Option<&PackingSet> {
        self.sets.iter().find(|s| s.tag == tag)
    }
}

/// Chosen sets of a packing, identified by tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingSolution {
    /// Tags in selection order.
    pub chosen: Vec<Vertex>,
    /// Whether the chosen sets were verified pairwise disjoint.
    pub disjoint: bool,
}

impl PackingSolution {
    /// Wraps `chosen` after checking pairwise disjointness against `sp`.
    pub fn certify(sp: &SetPackingInstance, chosen: Vec<Vertex>) -> Self {
        let disjoint = collection_is_disjoint(sp, &chosen);
        PackingSolution { chosen, disjoint }
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }
}

/// True when the sets tagged by `tags` are pairwise disjoint. Unknown tags
/// make the collection invalid.
pub fn collection_is_disjoint(sp: &SetPackingInstance, tags: &[Vertex]) -> bool {
    let mut used = vec![false; sp.elements.len()];
    for &t in tags {
        let Some(set) = sp.set_by_tag(t) else {
            return false;
        };
        for &e in &set.elements {
            if std::mem::replace(&mut used[e], true) {
                return false;
            }
        }
    }
    true
}

/// Builds the one-sided packing instance with `side_a` as the set side.
pub fn build_set_packing(
    inst: &ProblemInstance,
    side_a: &[Vertex],
    side_b: &[Vertex],
) -> Result<SetPackingInstance> {
    let d = inst.d();
    if d % 2 == 1 || d < 4 {
        return Err(Error::UnsupportedDistance {
            d,
            reason: "the bipartite construction needs an even d >= 4",
        });
    }
    check_bipartition(inst, side_a, side_b)?;
    let g = inst.graph();
    let half = d / 2;

    let mut a = side_a.to_vec();
    let mut b = side_b.to_vec();
    a.sort_unstable();
    b.sort_unstable();

    let mut elements: Vec<ElementTag> = b
        .iter()
        .map(|&vertex| ElementTag {
            vertex,
            side: Side::ElementSide,
        })
        .collect();
    if half % 2 == 1 {
        elements.extend(a.iter().map(|&vertex| ElementTag {
            vertex,
            side: Side::SetSide,
        }));
    }
    let mut element_of = vec![None; g.n()];
    for (e, tag) in elements.iter().enumerate() {
        element_of[tag.vertex] = Some(e);
    }

    let sets = a
        .iter()
        .map(|&tag| {
            let dist = truncated_bfs(g, tag, half - 1);
            let mut elems: Vec<usize> = g
                .vertices()
                .filter(|&x| dist[x].is_some())
                .filter_map(|x| element_of[x])
                .collect();
            elems.sort_unstable();
            PackingSet {
                tag,
                elements: elems,
            }
        })
        .collect();
    Ok(SetPackingInstance { elements, sets })
}

fn check_bipartition(inst: &ProblemInstance, a: &[Vertex], b: &[Vertex]) -> Result<()> {
    let g = inst.graph();
    let mut side = vec![None; g.n()];
    for (&v, s) in a.iter().map(|v| (v, 0u8)).chain(b.iter().map(|v| (v, 1u8))) {
        g.check_vertex(v)?;
        if side[v].replace(s).is_some() {
            return Err(Error::InvalidBipartition(format!(
                "vertex {v} listed more than once"
            )));
        }
    }
    if let Some(v) = side.iter().position(Option::is_none) {
        return Err(Error::InvalidBipartition(format!(
            "vertex {v} is on neither side"
        )));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(Error::InvalidBipartition(format!(
            "edge ({u}, {v}) lies within one side"
        )));
    }
    Ok(())
}

/// Minimum-cardinality-first greedy packing: repeatedly take the remaining
/// set with the fewest elements (lowest tag on ties) and drop every remaining
/// set that intersects it.
pub fn greedy_set_packing(sp: &SetPackingInstance) -> PackingSolution {
    let mut order: Vec<&PackingSet> = sp.sets.iter().collect();
    order.sort_by_key(|s| (s.elements.len(), s.tag));
    let mut used = vec![false; sp.elements.len()];
    let mut chosen = Vec::new();
    // Taking sets in (size, tag) order and skipping those that meet an
    // already-used element is the same as discarding intersecting sets.
    for set in order {
        if set.elements.iter().all(|&e| !used[e]) {
            for &e in &set.elements {
                used[e] = true;
            }
            chosen.push(set.tag);
        }
    }
    PackingSolution::certify(sp, chosen)
}

/// Both one-sided runs plus the combined answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteOutcome {
    pub solution: SolutionSet,
    /// One-sided solution with the colour class containing vertex 0 as sets.
    pub side_a: SolutionSet,
    /// One-sided solution with the roles exchanged.
    pub side_b: SolutionSet,
}

pub fn bipartite_approx(inst: &ProblemInstance) -> Result<SolutionSet> {
    bipartite_approx_detailed(inst).map(|o| o.solution)
}

pub fn bipartite_approx_detailed(inst: &ProblemInstance) -> Result<BipartiteOutcome> {
    let d = inst.d();
    if d % 2 == 1 || d < 4 {
        return Err(Error::UnsupportedDistance {
            d,
            reason: "the bipartite approximation needs an even d >= 4",
        });
    }
    let bp = bipartition(inst.graph()).ok_or(Error::NotBipartite)?;
    let run = |sets: &[Vertex], elems: &[Vertex]| -> Result<SolutionSet> {
        let sp = build_set_packing(inst, sets, elems)?;
        let packing = greedy_set_packing(&sp);
        is_scattered(inst, &packing.chosen)
    };
    let side_a = run(&bp.a, &bp.b)?;
    let side_b = run(&bp.b, &bp.a)?;
    let solution = if side_b.len() > side_a.len()
        || (side_b.len() == side_a.len() && side_b.vertices() < side_a.vertices())
    {
        side_b.clone()
    } else {
        side_a.clone()
    };
    Ok(BipartiteOutcome {
        solution,
        side_a,
        side_b,
    })
}
