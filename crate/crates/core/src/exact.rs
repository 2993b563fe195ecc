//! Exact solvers: an unrestricted brute-force oracle and the enumeration of
//! all candidate sets up to the per-component size bound.

use crate::enumerate::{compatibility, largest_compatible, EnumerationStats};
use crate::error::{Error, Result};
use crate::feasibility::{component_bound, is_scattered, ProblemInstance, SolutionSet};
use crate::graph::{connected_components, truncated_bfs, Vertex};

/// Default vertex cap for [`brute_force_opt`].
pub const DEFAULT_NODE_CAP: usize = 22;

/// Maximum d-scattered set by exhaustive include/exclude search.
///
/// Distances come from Floyd-Warshall rather than BFS so the oracle shares
/// no code path with the solvers it checks. The search explores vertices in
/// increasing order, including before excluding, and replaces the incumbent
/// only on strict improvement, so the lexicographically smallest maximum set
/// wins. Instances above `node_cap` (or above 64 vertices) are refused.
pub fn brute_force_opt(inst: &ProblemInstance, node_cap: usize) -> Result<SolutionSet> {
    let g = inst.graph();
    let n = g.n();
    if n > node_cap || n > 64 {
        return Err(Error::NodeCapExceeded {
            n,
            cap: node_cap.min(64),
        });
    }
    const INF: usize = usize::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        dist[u][v] = 1;
        dist[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    // conflict[v]: vertices at distance < d from v (excluding v)
    let conflict: Vec<u64> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && dist[v][u] < inst.d())
                .fold(0u64, |m, u| m | (1 << u))
        })
        .collect();

    let mut best = 0u64;
    branch(&conflict, 0, 0, &mut best);
    let chosen: Vec<Vertex> = (0..n).filter(|&v| best >> v & 1 == 1).collect();
    is_scattered(inst, &chosen)
}

fn branch(conflict: &[u64], v: usize, chosen: u64, best: &mut u64) {
    let n = conflict.len();
    if chosen.count_ones() > best.count_ones() {
        *best = chosen;
    }
    if v == n || chosen.count_ones() + (n - v) as u32 <= best.count_ones() {
        return;
    }
    if conflict[v] & chosen == 0 {
        branch(conflict, v + 1, chosen | 1 << v, best);
    }
    branch(conflict, v + 1, chosen, best);
}

/// Optimal solution restricted, per connected component, to candidate sets
/// no larger than the component's size bound. Components are solved
/// independently and their optima united.
pub fn exact_bounded(inst: &ProblemInstance) -> SolutionSet {
    exact_bounded_with_stats(inst).0
}

/// [`exact_bounded`] plus its enumeration counters.
pub fn exact_bounded_with_stats(inst: &ProblemInstance) -> (SolutionSet, EnumerationStats) {
    solve_components(inst, |size| component_bound(size, inst.d()))
}

/// Per-component bounded enumeration shared with the even rho solver: the
/// budget for a component of `size` vertices is `budget(size)`.
pub(crate) fn solve_components<F>(inst: &ProblemInstance, budget: F) -> (SolutionSet, EnumerationStats)
where
    F: Fn(usize) -> usize,
{
    let g = inst.graph();
    let d = inst.d();
    let mut stats = EnumerationStats::default();
    let mut chosen = Vec::new();
    for comp in connected_components(g) {
        let rows: Vec<Vec<Option<usize>>> =
            comp.iter().map(|&s| truncated_bfs(g, s, d - 1)).collect();
        let compat = compatibility(&comp, |a, b| {
            let i = comp.binary_search(&a).expect("member of component");
            rows[i][b].is_none()
        });
        let (local, s) = largest_compatible(&compat, budget(comp.len()));
        stats.absorb(s);
        chosen.extend(local.into_iter().map(|i| comp[i]));
    }
    let solution = is_scattered(inst, &chosen).expect("solver vertices are in range");
    (solution, stats)
}
