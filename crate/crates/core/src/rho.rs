//! Super-polynomial rho-approximations.
//!
//! Even `d`: per connected component of `n_C` vertices, the best feasible set
//! of size at most `ceil(floor(n_C / floor(d/2)) / rho)`.
//!
//! Odd `d`: with `q = (d-1)/2`, a set is d-scattered in `G` exactly when it
//! is 3-scattered in `G^q`. Phase 1 repeatedly selects an unmarked vertex of
//! minimum degree while that degree is below `rho` and excludes its distance-2
//! ball in `G^q`; phase 2 enumerates bounded subsets of the vertices left
//! unmarked.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerate::{compatibility, largest_compatible, EnumerationStats};
use crate::error::{Error, Result};
use crate::exact::solve_components;
use crate::feasibility::{is_scattered, ProblemInstance, SolutionSet};
use crate::graph::{connected_components, power_graph, truncated_bfs, Graph, Vertex};

/// Positive rational approximation ratio `num / den`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rho {
    num: u64,
    den: u64,
}

impl Rho {
    /// `num / den`; must be at least 1.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num < den {
            return Err(Error::RhoOutOfRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Rho {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(k: u64) -> Result<Self> {
        Rho::new(k, 1)
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `x < rho` for a nonnegative integer `x`.
    pub fn exceeds(self, x: usize) -> bool {
        (x as u128) * (self.den as u128) < self.num as u128
    }

    /// `rho * x` compared with `y`: true when `y <= rho * x`.
    pub fn bounds(self, y: usize, x: usize) -> bool {
        (y as u128) * (self.den as u128) <= (x as u128) * (self.num as u128)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rho {
    type Err = Error;

    /// Accepts `"3"`, `"3/2"` or a finite decimal such as `"1.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::RhoOutOfRange(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Rho::new(n, d).map_err(|_| bad());
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac))
            .ok_or_else(bad)?;
        Rho::new(num, den).map_err(|_| bad())
    }
}

/// How phase 1 of the odd solver counts degrees in `G^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum DegreeMode {
    /// Neighbours that are still unmarked.
    #[default]
    Residual,
    /// All neighbours in `G^q`.
    Static,
}

/// Even-d budget for a component of `size` vertices: the least `k >= 1` with
/// `floor(size / floor(d/2)) <= rho k`. Rounding up keeps the ratio exact when
/// the quotient is fractional.
pub fn even_budget(size: usize, d: usize, rho: Rho) -> usize {
    if size == 0 {
        return 0;
    }
    let bound = (size / (d / 2)) as u128;
    let b = (bound * rho.den as u128).div_ceil(rho.num as u128);
    (b as usize).max(1)
}

/// Odd-d phase-2 budget `ceil(2 size / (rho (rho + floor(d/2))))`, at least
/// 1 when `size > 0`.
pub fn odd_budget(size: usize, d: usize, rho: Rho) -> usize {
    if size == 0 {
        return 0;
    }
    let (p, q) = (rho.num as u128, rho.den as u128);
    let half = (d / 2) as u128;
    // 2n / ((p/q) (p/q + h)) = 2 n q^2 / (p (p + h q))
    let b = (2 * size as u128 * q * q).div_ceil(p * (p + half * q));
    (b as usize).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoEvenOutcome {
    pub solution: SolutionSet,
    pub stats: EnumerationStats,
}

pub fn rho_approx_even(inst: &ProblemInstance, rho: Rho) -> Result<SolutionSet> {
    rho_approx_even_detailed(inst, rho).map(|o| o.solution)
}

pub fn rho_approx_even_detailed(inst: &ProblemInstance, rho: Rho) -> Result<RhoEvenOutcome> {
    let d = inst.d();
    if d % 2 == 1 {
        return Err(Error::UnsupportedDistance {
            d,
            reason: "the even rho-approximation needs an even d",
        });
    }
    let (solution, stats) = solve_components(inst, |size| even_budget(size, d, rho));
    Ok(RhoEvenOutcome { solution, stats })
}

/// Phase bookkeeping of the odd solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoOddOutcome {
    pub solution: SolutionSet,
    /// Phase-1 selections in order.
    pub selected: Vec<Vertex>,
    /// Vertices excluded in phase 1, sorted.
    pub excluded: Vec<Vertex>,
    /// Vertices left unmarked after phase 1, sorted.
    pub remaining: Vec<Vertex>,
    /// Phase-2 picks, sorted.
    pub phase2: Vec<Vertex>,
    pub stats: EnumerationStats,
    /// The power graph `G^q` used by both phases.
    pub power: Graph,
}

pub fn rho_approx_odd(inst: &ProblemInstance, rho: Rho) -> Result<SolutionSet> {
    rho_approx_odd_detailed(inst, rho, DegreeMode::Residual).map(|o| o.solution)
}

pub fn rho_approx_odd_detailed(
    inst: &ProblemInstance,
    rho: Rho,
    mode: DegreeMode,
) -> Result<RhoOddOutcome> {
    let d = inst.d();
    if d.is_multiple_of(2) {
        return Err(Error::UnsupportedDistance {
            d,
            reason: "the odd rho-approximation needs an odd d",
        });
    }
    let g = inst.graph();
    let n = g.n();
    let power = power_graph(g, (d - 1) / 2)?;

    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Mark {
        Unmarked,
        Selected,
        Excluded,
    }
    let mut mark = vec![Mark::Unmarked; n];
    let mut residual: Vec<usize> = power.vertices().map(|v| power.degree(v)).collect();
    let mut selected = Vec::new();

    loop {
        let degree = |v: Vertex| match mode {
            DegreeMode::Residual => residual[v],
            DegreeMode::Static => power.degree(v),
        };
        let Some(v) = (0..n)
            .filter(|&v| mark[v] == Mark::Unmarked)
            .min_by_key(|&v| (degree(v), v))
        else {
            break;
        };
        if !rho.exceeds(degree(v)) {
            break;
        }
        selected.push(v);
        let dist = truncated_bfs(&power, v, 2);
        let newly: Vec<Vertex> = (0..n)
            .filter(|&u| mark[u] == Mark::Unmarked && dist[u].is_some())
            .collect();
        for &u in &newly {
            mark[u] = if u == v { Mark::Selected } else { Mark::Excluded };
        }
        for &u in &newly {
            for &w in power.neighbors(u) {
                if mark[w] == Mark::Unmarked {
                    residual[w] -= 1;
                }
            }
        }
    }

    let excluded: Vec<Vertex> = (0..n).filter(|&v| mark[v] == Mark::Excluded).collect();
    let remaining: Vec<Vertex> = (0..n).filter(|&v| mark[v] == Mark::Unmarked).collect();

    // Phase 2. Budgets come from the components of G^q[H]; the enumeration
    // runs on groups of those components that conflict (G^q-distance <= 2,
    // possibly through excluded vertices), so candidates from different
    // groups never clash and the group optima can be united.
    let sub = power.induced_subgraph(&remaining);
    let mut block_budget = vec![0usize; remaining.len()];
    let mut block_of = vec![usize::MAX; remaining.len()];
    let conflict_rows: Vec<Vec<Option<usize>>> =
        remaining.iter().map(|&v| truncated_bfs(&power, v, 2)).collect();
    let conflict_graph = Graph::from_edges_dedup(
        remaining.len(),
        (0..remaining.len()).flat_map(|i| {
            let row = &conflict_rows[i];
            remaining
                .iter()
                .enumerate()
                .filter(move |&(j, &w)| j > i && row[w].is_some())
                .map(move |(j, _)| (i, j))
        }),
    )
    .expect("local ids are in range");
    let blocks = connected_components(&conflict_graph);
    for (b, block) in blocks.iter().enumerate() {
        for &i in block {
            block_of[i] = b;
        }
    }
    for comp in connected_components(&sub) {
        let b = block_of[comp[0]];
        block_budget[b] += odd_budget(comp.len(), d, rho);
    }

    let mut stats = EnumerationStats::default();
    let mut phase2 = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        // Candidates must also be 3-scattered from the phase-1 selections.
        // Exclusion of the distance-2 balls already guarantees it.
        let admissible: Vec<usize> = block
            .iter()
            .copied()
            .filter(|&i| selected.iter().all(|&s| conflict_rows[i][s].is_none()))
            .collect();
        debug_assert_eq!(admissible.len(), block.len());
        let members: Vec<Vertex> = admissible.iter().map(|&i| remaining[i]).collect();
        let compat = compatibility(&admissible, |i, j| conflict_rows[i][remaining[j]].is_none());
        let (local, s) = largest_compatible(&compat, block_budget[b]);
        stats.absorb(s);
        phase2.extend(local.into_iter().map(|k| members[k]));
    }
    phase2.sort_unstable();

    let chosen: Vec<Vertex> = selected.iter().chain(phase2.iter()).copied().collect();
    let solution = is_scattered(inst, &chosen)?;
    Ok(RhoOddOutcome {
        solution,
        selected,
        excluded,
        remaining,
        phase2,
        stats,
        power,
    })
}
