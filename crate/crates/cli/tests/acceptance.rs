//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Ground truth comes from the exhaustive oracles.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use dss_core::bipartite::{bipartite_approx, build_set_packing, collection_is_disjoint};
use dss_core::exact::{brute_force_opt, exact_bounded};
use dss_core::generate::{bipartite_random, connected_random, gnp};
use dss_core::graph::{
    bipartition, connected_components, cycle, diameter, path, power_graph, Diameter, Graph, Vertex,
};
use dss_core::greedy::{greedy_scattered, SelectionRule};
use dss_core::reductions::{
    cycle_plus_matching, gadget_tree_instance, merge, reduce_is_even, reduce_is_odd, GadgetConfig,
};
use dss_core::rho::{even_budget, rho_approx_even_detailed, rho_approx_odd_detailed, DegreeMode, Rho};
use dss_core::testkit::{
    all_connected_labeled_graphs, all_labeled_graphs, floyd_warshall, naive_alpha, naive_is_scattered,
    naive_max_packing, naive_opt,
};
use dss_core::treewidth::{min_degree_decomposition, power_decomposition, power_width_bound, validate_decomposition};
use dss_core::ProblemInstance;

const ORACLE_CAP: usize = 22;
const BIG_CAP: usize = 64;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn inst(g: &Graph, d: usize) -> ProblemInstance {
    ProblemInstance::new(g.clone(), d).expect("d >= 2")
}

fn oracle(g: &Graph, d: usize) -> usize {
    brute_force_opt(&inst(g, d), BIG_CAP).expect("within cap").len()
}

/// A criterion-1 instance with its oracle optimum.
struct Case {
    g: Graph,
    d: usize,
    opt: usize,
}

/// All connected labeled graphs on 1..=6 vertices plus 200 seeded random
/// graphs on 7..=14 vertices, each for d in {3, 4, 5, 6}. The optimum is the
/// branch-and-bound oracle, itself cross-checked against plain subset search.
fn cases() -> &'static (Vec<Case>, usize) {
    static CASES: OnceLock<(Vec<Case>, usize)> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut graphs: Vec<Graph> = (1..=6).flat_map(all_connected_labeled_graphs).collect();
        let exhaustive = graphs.len();
        for seed in 0..200u64 {
            let n = 7 + (seed % 8) as usize;
            let p = [0.15, 0.25, 0.4][(seed % 3) as usize];
            graphs.push(if seed % 2 == 0 {
                gnp(n, p, seed)
            } else {
                connected_random(n, p / 2.0, seed)
            });
        }
        let mut out = Vec::new();
        for g in graphs {
            for d in 3..=6 {
                let opt = brute_force_opt(&inst(&g, d), ORACLE_CAP).expect("small").len();
                assert_eq!(opt, naive_opt(&g, d), "oracles disagree");
                out.push(Case { g: g.clone(), d, opt });
            }
        }
        (out, exhaustive)
    })
}

fn c1_oracle_exactness() -> Verdict {
    let (cases, exhaustive) = cases();
    let bad = cases
        .iter()
        .filter(|c| {
            let s = exact_bounded(&inst(&c.g, c.d));
            s.len() != c.opt || !s.certified()
        })
        .count();
    verdict(
        bad == 0,
        format!(
            "{} instances ({exhaustive} connected labeled graphs n<=6 and 200 random n<=14, x4 values of d), {bad} mismatches",
            cases.len()
        ),
    )
}

fn c2_component_bound() -> Verdict {
    let (cases, _) = cases();
    let (mut checked, mut degenerate, mut bad) = (0, 0, 0);
    for c in cases {
        let h = c.d / 2;
        for comp in connected_components(&c.g) {
            let opt = if comp.len() == c.g.n() {
                c.opt
            } else {
                oracle(&c.g.induced_subgraph(&comp), c.d)
            };
            let bound = comp.len() / h;
            checked += 1;
            if bound == 0 {
                // fewer than floor(d/2) vertices: the quotient is 0 but one
                // vertex is always feasible
                degenerate += 1;
                bad += usize::from(opt != 1);
            } else {
                bad += usize::from(opt > bound);
            }
        }
    }
    verdict(
        bad == 0,
        format!(
            "{checked} components, {bad} violations; {degenerate} components smaller than floor(d/2) have OPT=1 > floor(|C|/floor(d/2))=0"
        ),
    )
}

fn c3_greedy_ratio() -> Verdict {
    let (cases, _) = cases();
    let (mut bad, mut infeasible, mut worst) = (0, 0, 0f64);
    for c in cases {
        let factor = 1 + (c.g.max_degree() as u128).pow((c.d / 2) as u32);
        for rule in SelectionRule::ALL {
            let s = greedy_scattered(&inst(&c.g, c.d), rule).solution;
            infeasible += usize::from(!s.certified());
            bad += usize::from(c.opt as u128 > s.len() as u128 * factor);
            if !s.is_empty() {
                worst = worst.max(c.opt as f64 / s.len() as f64);
            }
        }
    }
    verdict(
        bad == 0 && infeasible == 0,
        format!(
            "{} runs (3 rules), {bad} ratio violations, {infeasible} infeasible, worst OPT/size {worst:.3}",
            cases.len() * 3
        ),
    )
}

fn c4_bipartite_correspondence() -> Verdict {
    let mut graphs: Vec<Graph> = (2..=12).map(path).collect();
    graphs.extend((4..=12).step_by(2).map(cycle));
    for seed in 0..150u64 {
        let a = 1 + (seed % 6) as usize;
        let b = 1 + (seed / 6 % 6) as usize;
        graphs.push(bipartite_random(a, b, [0.2, 0.35, 0.5][(seed % 3) as usize], seed));
    }
    let (mut subsets, mut bad, mut packing_bad) = (0u64, 0, 0);
    for g in &graphs {
        let dist = floyd_warshall(g);
        let bp = bipartition(g).expect("bipartite");
        for d in [4, 6] {
            let instance = inst(g, d);
            for (sets, elems) in [(&bp.a, &bp.b), (&bp.b, &bp.a)] {
                let sp = build_set_packing(&instance, sets, elems).expect("valid bipartition");
                let mut best = 0;
                for mask in 0u32..1 << sets.len() {
                    let chosen: Vec<Vertex> = (0..sets.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| sets[i])
                        .collect();
                    let scattered = naive_is_scattered(&dist, &chosen, d);
                    subsets += 1;
                    bad += usize::from(collection_is_disjoint(&sp, &chosen) != scattered);
                    if scattered {
                        best = best.max(chosen.len());
                    }
                }
                packing_bad += usize::from(naive_max_packing(&sp) != best);
            }
        }
    }
    verdict(
        bad == 0 && packing_bad == 0,
        format!(
            "{} graphs n<=12, d in {{4,6}}, both sides: {subsets} subsets checked, {bad} mismatches, {packing_bad} optimum mismatches",
            graphs.len()
        ),
    )
}

fn c5_bipartite_ratio() -> Verdict {
    let (mut bad, mut infeasible, mut min_slack) = (0, 0, f64::INFINITY);
    for seed in 0..100u64 {
        let a = 2 + (seed % 7) as usize;
        let b = 2 + (seed / 7 % 7) as usize;
        let g = bipartite_random(a, b, [0.15, 0.3, 0.45][(seed % 3) as usize], 1000 + seed);
        let d = if seed % 2 == 0 { 4 } else { 6 };
        let opt = oracle(&g, d);
        let s = bipartite_approx(&inst(&g, d)).expect("bipartite, even d");
        let need = (opt as f64 / (2.0 * (g.n() as f64).sqrt())).ceil() as usize;
        infeasible += usize::from(!s.certified());
        bad += usize::from(s.len() < need);
        min_slack = min_slack.min(s.len() as f64 - need as f64);
    }
    verdict(
        bad == 0 && infeasible == 0,
        format!("100 random bipartite graphs n<=16, {bad} below ceil(OPT/(2 sqrt n)), {infeasible} infeasible, min slack {min_slack}"),
    )
}

fn subsets_up_to_4(n: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..4 {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&v: &Vertex| v + 1);
            for v in start..n {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn c6_power_equivalence() -> Verdict {
    let (mut checked, mut bad, mut graphs) = (0u64, 0, 0);
    for seed in 0..40u64 {
        let n = 5 + (seed % 8) as usize;
        let g = if seed % 2 == 0 {
            gnp(n, 0.25, 2000 + seed)
        } else {
            connected_random(n, 0.05, 2000 + seed)
        };
        graphs += 1;
        let dg = floyd_warshall(&g);
        let subsets = subsets_up_to_4(n);
        for d in [3, 5, 7] {
            let dp = floyd_warshall(&power_graph(&g, (d - 1) / 2).expect("q >= 1"));
            for s in &subsets {
                checked += 1;
                bad += usize::from(naive_is_scattered(&dg, s, d) != naive_is_scattered(&dp, s, 3));
            }
        }
    }
    verdict(
        bad == 0,
        format!("{graphs} graphs n<=12, d in {{3,5,7}}, {checked} subsets of size <=4, {bad} mismatches"),
    )
}

fn c7_rho_ratio() -> Verdict {
    let (cases, _) = cases();
    let rhos = [Rho::new(3, 2).unwrap(), Rho::integer(2).unwrap(), Rho::integer(3).unwrap()];
    let (mut runs, mut bad, mut budget_bad, mut static_bad, mut worst) = (0, 0, 0, 0, 0f64);
    for c in cases {
        let instance = inst(&c.g, c.d);
        for &rho in &rhos {
            let (s, stats) = if c.d % 2 == 0 {
                let out = rho_approx_even_detailed(&instance, rho).expect("even");
                let expected: usize = connected_components(&c.g)
                    .iter()
                    .map(|comp| even_budget(comp.len(), c.d, rho))
                    .sum();
                budget_bad += usize::from(out.stats.budget != expected);
                (out.solution, out.stats)
            } else {
                let st = rho_approx_odd_detailed(&instance, rho, DegreeMode::Static).expect("odd");
                static_bad += usize::from(!st.solution.certified() || !rho.bounds(c.opt, st.solution.len()));
                let out = rho_approx_odd_detailed(&instance, rho, DegreeMode::default()).expect("odd");
                (out.solution, out.stats)
            };
            runs += 1;
            budget_bad += usize::from(u128::from(stats.examined) > stats.max_candidates);
            bad += usize::from(!s.certified() || !rho.bounds(c.opt, s.len()));
            if !s.is_empty() {
                worst = worst.max(c.opt as f64 / s.len() as f64);
            }
        }
    }
    verdict(
        bad == 0 && budget_bad == 0 && static_bad == 0,
        format!(
            "{runs} runs, rho in {{3/2,2,3}}: {bad} ratio/feasibility violations, {budget_bad} budget violations, worst OPT/size {worst:.3}; static-degree variant: {static_bad} violations"
        ),
    )
}

fn c8_reductions() -> Verdict {
    let mut graphs: Vec<Graph> = (1..=5).flat_map(all_labeled_graphs).collect();
    let exhaustive = graphs.len();
    for seed in 0..100u64 {
        let n = 6 + (seed % 2) as usize;
        graphs.push(gnp(n, [0.2, 0.4, 0.6][(seed % 3) as usize], 3000 + seed));
    }
    let (mut runs, mut bad) = (0, 0);
    for g in &graphs {
        let alpha = naive_alpha(g);
        for d in [4, 6, 5, 7] {
            let (h, cert) = if d % 2 == 0 {
                reduce_is_even(g, d)
            } else {
                reduce_is_odd(g, d)
            }
            .expect("supported d");
            runs += 1;
            bad += usize::from(!cert.is_injective() || oracle(&h, d) != alpha);
        }
    }
    verdict(
        bad == 0,
        format!(
            "{runs} reductions ({exhaustive} labeled graphs n<=5 and 100 random n<=7, d in {{4,6,5,7}}), {bad} mismatches"
        ),
    )
}

fn c9_gadgets() -> Verdict {
    let mut graphs: Vec<Graph> = (1..=4).flat_map(all_labeled_graphs).collect();
    for seed in 0..60u64 {
        graphs.push(gnp(5, [0.3, 0.5][(seed % 2) as usize], 4000 + seed));
    }
    let (mut generated, mut degree_bad, mut qualifying, mut opt_bad) = (0, 0, 0, 0);
    for g in &graphs {
        let alpha = naive_alpha(g);
        for d in [4, 5] {
            for seed in 0..3 {
                let cfg = GadgetConfig::new(d, g.max_degree().max(2), 0.5, seed).expect("valid");
                let out = gadget_tree_instance(g, &cfg).expect("degree within bound");
                generated += 1;
                degree_bad += usize::from(!out.meets_degree_bound());
                if out.diameters_meet_bound() {
                    qualifying += 1;
                    opt_bad += usize::from(oracle(&out.graph, d) != alpha);
                }
            }
        }
    }
    verdict(
        degree_bad == 0 && opt_bad == 0,
        format!(
            "{generated} instances (n<=5, d in {{4,5}}, 3 seeds): {degree_bad} degree-bound violations; qualifying fraction {qualifying}/{generated} = {:.3}; {opt_bad} optimum mismatches on qualifying",
            qualifying as f64 / generated as f64
        ),
    )
}

fn c10_expander_diameter() -> Verdict {
    let n = 4096usize;
    let bound = (n as f64).log2() + (n as f64).log2().log2() + 10.0;
    let threads = std::thread::available_parallelism().map_or(4, |x| x.get()).min(16);
    let seeds: Vec<u64> = (0..50).collect();
    let diameters: Vec<usize> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(50usize.div_ceil(threads))
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&s| match diameter(&cycle_plus_matching(n, s).expect("n >= 3")) {
                            Diameter::Finite(x) => x,
                            Diameter::Infinite => usize::MAX,
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker")).collect()
    });
    let within = diameters.iter().filter(|&&x| (x as f64) <= bound).count();
    let max = diameters.iter().max().copied().unwrap_or(0);
    verdict(
        within * 10 >= 50 * 9,
        format!("n=4096, 50 seeds: {within}/50 within {bound:.2} (max diameter {max})"),
    )
}

fn fw_diameter(g: &Graph) -> Option<usize> {
    let dist = floyd_warshall(g);
    dist.iter().flatten().try_fold(0, |m, x| x.map(|x| m.max(x)))
}

fn c11_power_diameter() -> Verdict {
    let (mut checked, mut bad) = (0, 0);
    for seed in 0..100u64 {
        let n = 2 + (seed % 29) as usize;
        let g = connected_random(n, [0.0, 0.05, 0.1][(seed % 3) as usize], 5000 + seed);
        let base = fw_diameter(&g).expect("connected");
        for b in [2, 3] {
            let p = fw_diameter(&power_graph(&g, b).expect("b >= 1")).expect("connected");
            checked += 1;
            bad += usize::from(p > base.div_ceil(b));
        }
    }
    verdict(bad == 0, format!("100 connected graphs n<=30, b in {{2,3}}: {checked} checks, {bad} violations"))
}

fn c12_power_decomposition() -> Verdict {
    let (mut invalid, mut uncovered, mut over_bound, mut worst) = (0, 0, 0, 0f64);
    for seed in 0..100u64 {
        let n = 1 + (seed % 20) as usize;
        let g = if seed % 2 == 0 {
            gnp(n, 0.2, 6000 + seed)
        } else {
            connected_random(n, 0.08, 6000 + seed)
        };
        let t = min_degree_decomposition(&g);
        invalid += usize::from(validate_decomposition(&g, &t).is_err());
        let dist = floyd_warshall(&g);
        for d in [2, 3, 4] {
            let p = power_decomposition(&g, &t, d).expect("valid input");
            invalid += usize::from(validate_decomposition(&power_graph(&g, d).expect("d >= 1"), &p).is_err());
            // independent coverage check from Floyd-Warshall distances
            for u in 0..n {
                for v in u + 1..n {
                    if dist[u][v].is_some_and(|x| x <= d) {
                        let covered = p.bags().iter().any(|b| b.contains(&u) && b.contains(&v));
                        uncovered += usize::from(!covered);
                    }
                }
            }
            let bound = power_width_bound(t.width(), g.max_degree(), d);
            over_bound += usize::from(p.width() as u128 > bound);
            worst = worst.max((p.width() + 1) as f64 / (bound + 1) as f64);
        }
    }
    verdict(
        invalid == 0 && uncovered == 0 && over_bound == 0,
        format!(
            "300 transforms (100 graphs n<=20, d in {{2,3,4}}): {invalid} invalid, {uncovered} uncovered power edges, {over_bound} above width bound, max bag-size/bound {worst:.3}"
        ),
    )
}

fn c13_merge() -> Verdict {
    let (mut bad, mut merges) = (0, 0);
    for seed in 0..100u64 {
        let n1 = 1 + (seed % 8) as usize;
        let n2 = 1 + (seed / 8 % 8) as usize;
        let g1 = gnp(n1, 0.35, 7000 + seed);
        let g2 = connected_random(n2, 0.1, 8000 + seed);
        let v1 = (seed as usize * 7) % n1;
        let v2 = (seed as usize * 5) % n2;
        let k = (seed % 4) as usize;
        let u: Vec<Vertex> = (0..k).map(|i| (seed as usize + 3 * i) % n1).collect();
        let w: Vec<Vertex> = (0..k).map(|i| (seed as usize * 3 + i) % n2).collect();
        let m = merge(&g1, &g2, v1, v2, &u, &w).expect("valid merge");
        let d = 2 + (seed % 5) as usize;
        merges += 1;
        bad += usize::from(oracle(&m.graph, d) > oracle(&g1, d) + oracle(&g2, d));
    }
    verdict(bad == 0, format!("{merges} merges of pieces n<=8, {bad} violations of OPT(merged) <= OPT(g1)+OPT(g2)"))
}

fn dss(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_dss"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dss-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(dir.join("bench")).expect("temp dir");
    dir
}

fn c14_determinism() -> Verdict {
    let dir = scratch_dir();
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let write = |path: &Path, args: &[&str]| {
        let (code, out) = dss(args);
        assert_eq!(code, Some(0), "{args:?}");
        std::fs::write(path, out).expect("write");
    };
    write(&dir.join("g.dss"), &["generate", "--kind", "gnp", "--n", "12", "--p", "0.3", "--seed", "3"]);
    write(&dir.join("small.dss"), &["generate", "--kind", "path", "--n", "4"]);
    write(&dir.join("bench/a.dss"), &["generate", "--kind", "connected", "--n", "10", "--p", "0.1", "--seed", "9"]);
    write(&dir.join("bench/b.dss"), &["generate", "--kind", "bipartite", "--n", "5", "--p", "0.4", "--seed", "4"]);
    let (g, small, bench) = (p("g.dss"), p("small.dss"), p("bench"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["generate", "--kind", "cycle-matching", "--n", "300", "--seed", "7"],
        vec!["generate", "--kind", "gnp", "--n", "15", "--seed", "1", "--format", "json"],
        vec!["solve", &g, "--d", "4", "--algo", "exact", "--oracle-cap", "22"],
        vec!["solve", &g, "--d", "3", "--algo", "greedy", "--rule", "min-degree-static"],
        vec!["solve", &g, "--d", "4", "--algo", "rho-even", "--rho", "3/2"],
        vec!["solve", &g, "--d", "5", "--algo", "rho-odd", "--rho", "2", "--format", "text"],
        vec!["solve", &small, "--d", "4", "--algo", "bipartite"],
        vec!["verify", &g, "--d", "3", "--set", "0,5"],
        vec!["oracle", &g, "--d", "4"],
        vec!["reduce", &small, "--mode", "is-even", "--d", "4"],
        vec!["reduce", &small, "--mode", "is-odd", "--d", "5", "--format", "json"],
        vec!["reduce", &small, "--mode", "gadget", "--d", "6", "--seed", "5"],
        vec!["power", &g, "--q", "2"],
        vec!["twtransform", &g, "--d", "3"],
        vec!["bench", &bench, "--d", "3,4", "--algo", "exact,greedy,bipartite,rho-even,rho-odd", "--rho", "2,3/2", "--oracle-cap", "22"],
    ];
    let mut differing = Vec::new();
    let mut failed = Vec::new();
    for args in &runs {
        let first = dss(args);
        let second = dss(args);
        if first != second {
            differing.push(args[0]);
        }
        if !matches!(first.0, Some(0) | Some(3)) || first.1.is_empty() {
            failed.push(args[0]);
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    let subcommands: std::collections::BTreeSet<&str> = runs.iter().map(|a| a[0]).collect();
    verdict(
        differing.is_empty() && failed.is_empty() && subcommands.len() == 8,
        format!(
            "{} invocations covering {} subcommands run twice: {} differing {:?}, {} failed {:?}",
            runs.len(),
            subcommands.len(),
            differing.len(),
            differing,
            failed.len(),
            failed
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 14] = [
        (1, "oracle exactness", c1_oracle_exactness),
        (2, "per-component size bound", c2_component_bound),
        (3, "greedy ratio", c3_greedy_ratio),
        (4, "bipartite correspondence", c4_bipartite_correspondence),
        (5, "bipartite end-to-end ratio", c5_bipartite_ratio),
        (6, "power-graph equivalence", c6_power_equivalence),
        (7, "rho-approximation ratio", c7_rho_ratio),
        (8, "reduction optimum preservation", c8_reductions),
        (9, "gadget properties", c9_gadgets),
        (10, "expander diameter", c10_expander_diameter),
        (11, "power-graph diameter", c11_power_diameter),
        (12, "power decomposition transform", c12_power_decomposition),
        (13, "merge bound", c13_merge),
        (14, "cli determinism", c14_determinism),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (id, name, check) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        failures += usize::from(!v.pass);
        println!(
            "criterion {id:>2} {} {name}: {} [{:.1}s]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
