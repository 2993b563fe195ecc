//! Ball-removal greedy: pick a vertex, discard every remaining vertex within
//! distance `d - 1` of it in the original graph, repeat until nothing is left.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::feasibility::{is_scattered, ProblemInstance, SolutionSet};
use crate::graph::{truncated_bfs, Vertex};

/// Which remaining vertex the greedy picks next. Ties go to the lowest id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum SelectionRule {
    /// Minimum degree in the subgraph induced by the remaining vertices.
    #[default]
    MinDegreeResidual,
    /// Minimum degree in the input graph.
    MinDegreeStatic,
    /// Lowest remaining id.
    FirstId,
}

impl SelectionRule {
    pub const ALL: [SelectionRule; 3] = [
        SelectionRule::MinDegreeResidual,
        SelectionRule::MinDegreeStatic,
        SelectionRule::FirstId,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SelectionRule::MinDegreeResidual => "min-degree-residual",
            SelectionRule::MinDegreeStatic => "min-degree-static",
            SelectionRule::FirstId => "first-id",
        }
    }
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        SelectionRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown selection rule '{s}'")))
    }
}

/// Output of [`greedy_scattered`] with the removal bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub solution: SolutionSet,
    /// Picks in selection order.
    pub picks: Vec<Vertex>,
    /// `balls[i]`: the vertices removed by pick `i` (the pick included),
    /// sorted. Together they partition the vertex set.
    pub balls: Vec<Vec<Vertex>>,
}

pub fn greedy_scattered(inst: &ProblemInstance, rule: SelectionRule) -> GreedyOutcome {
    let g = inst.graph();
    let n = g.n();
    let mut removed = vec![false; n];
    let mut residual: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut left = n;
    let mut picks = Vec::new();
    let mut balls = Vec::new();

    while left > 0 {
        let alive = (0..n).filter(|&v| !removed[v]);
        let pick = match rule {
            SelectionRule::MinDegreeResidual => alive.min_by_key(|&v| (residual[v], v)),
            SelectionRule::MinDegreeStatic => alive.min_by_key(|&v| (g.degree(v), v)),
            SelectionRule::FirstId => alive.min(),
        }
        .expect("a vertex remains");

        let dist = truncated_bfs(g, pick, inst.d() - 1);
        let ball: Vec<Vertex> = (0..n)
            .filter(|&u| !removed[u] && dist[u].is_some())
            .collect();
        for &u in &ball {
            removed[u] = true;
        }
        for &u in &ball {
            for &w in g.neighbors(u) {
                if !removed[w] {
                    residual[w] -= 1;
                }
            }
        }
        left -= ball.len();
        picks.push(pick);
        balls.push(ball);
    }

    let solution = is_scattered(inst, &picks).expect("picks are in range");
    GreedyOutcome {
        solution,
        picks,
        balls,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, star, Graph};

    fn inst(g: Graph, d: usize) -> ProblemInstance {
        ProblemInstance::new(g, d).unwrap()
    }

    #[test]
    fn star_collapses_to_one_pick() {
        for rule in SelectionRule::ALL {
            let out = greedy_scattered(&inst(star(4), 3), rule);
            assert_eq!(out.solution.len(), 1, "{rule}");
            assert_eq!(out.balls.len(), 1);
            assert_eq!(out.balls[0].len(), 5);
        }
    }

    #[test]
    fn path_trace() {
        let out = greedy_scattered(&inst(path(9), 4), SelectionRule::MinDegreeResidual);
        assert_eq!(out.picks, vec![0, 4, 8]);
        assert_eq!(out.solution.vertices(), &[0, 4, 8]);
        assert!(out.solution.certified());
        assert_eq!(out.balls, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8]]);
    }

    #[test]
    fn residual_degree_changes_pick_order() {
        // P5 with d=2: after picking 0 (removing 0,1) the residual degree of
        // 2 drops to 1 and ties with 4; lowest id wins.
        let out = greedy_scattered(&inst(path(5), 2), SelectionRule::MinDegreeResidual);
        assert_eq!(out.picks, vec![0, 2, 4]);
        let out = greedy_scattered(&inst(path(5), 2), SelectionRule::MinDegreeStatic);
        assert_eq!(out.picks, vec![0, 4, 2]);
    }

    #[test]
    fn empty_graph() {
        let out = greedy_scattered(&inst(Graph::new(0), 3), SelectionRule::FirstId);
        assert!(out.solution.is_empty());
        assert!(out.balls.is_empty());
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in SelectionRule::ALL {
            assert_eq!(rule.name().parse::<SelectionRule>().unwrap(), rule);
        }
        assert!("max-degree".parse::<SelectionRule>().is_err());
    }
}
