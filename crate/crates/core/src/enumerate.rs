//! Bounded subset enumeration over a pairwise-compatibility relation.
//!
//! Feasibility of a d-scattered set is a pairwise condition, so any superset
//! of an incompatible pair is infeasible and the search only ever extends a
//! feasible set with candidates compatible with all of its members.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// Counters reported by the enumeration solvers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    /// Nonempty candidate subsets visited (each one feasible by construction).
    pub examined: u64,
    /// Total size budget summed over the enumerated blocks.
    pub budget: usize,
    /// `sum_{i=1..=budget_b} C(|block|, i)` summed over blocks: the most
    /// subsets the search could visit.
    pub max_candidates: u128,
}

impl EnumerationStats {
    pub(crate) fn absorb(&mut self, other: EnumerationStats) {
        self.examined += other.examined;
        self.budget += other.budget;
        self.max_candidates = self.max_candidates.saturating_add(other.max_candidates);
    }
}

/// `sum_{i=1..=k} C(n, i)`, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 1..=k.min(n) {
        binom = binom.saturating_mul((n - i + 1) as u128) / i as u128;
        total = total.saturating_add(binom);
    }
    total
}

/// Largest subset of `0..compat.len()` of size at most `budget` whose members
/// are pairwise compatible. Among maximum subsets the lexicographically
/// smallest is returned, because candidates are tried include-first in
/// increasing order and only a strictly larger set replaces the incumbent.
///
/// `compat[i]` must be symmetric and must not contain `i` itself.
pub(crate) fn largest_compatible(compat: &[FixedBitSet], budget: usize) -> (Vec<usize>, EnumerationStats) {
    let n = compat.len();
    let mut search = Search {
        compat,
        budget,
        best: Vec::new(),
        chosen: Vec::with_capacity(budget),
        examined: 0,
    };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    search.extend(&all, 0);
    let stats = EnumerationStats {
        examined: search.examined,
        budget,
        max_candidates: subsets_up_to(n, budget),
    };
    (search.best, stats)
}

struct Search<'a> {
    compat: &'a [FixedBitSet],
    budget: usize,
    best: Vec<usize>,
    chosen: Vec<usize>,
    examined: u64,
}

impl Search<'_> {
    fn extend(&mut self, candidates: &FixedBitSet, from: usize) {
        if self.chosen.len() == self.budget {
            return;
        }
        for v in candidates.ones().filter(|&v| v >= from) {
            let remaining = candidates.count_ones(v..);
            if self.chosen.len() + remaining <= self.best.len() {
                break;
            }
            self.chosen.push(v);
            self.examined += 1;
            if self.chosen.len() > self.best.len() {
                self.best.clone_from(&self.chosen);
            }
            let mut next = candidates.clone();
            next.intersect_with(&self.compat[v]);
            self.extend(&next, v + 1);
            self.chosen.pop();
        }
    }
}

/// Builds the compatibility rows for `members` under `ok(a, b)`, indexed
/// locally by position in `members`.
pub(crate) fn compatibility<F>(members: &[usize], mut ok: F) -> Vec<FixedBitSet>
where
    F: FnMut(usize, usize) -> bool,
{
    let k = members.len();
    let mut rows = vec![FixedBitSet::with_capacity(k); k];
    for i in 0..k {
        for j in i + 1..k {
            if ok(members[i], members[j]) {
                rows[i].insert(j);
                rows[j].insert(i);
            }
        }
    }
    rows
}
