use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use dss_core::bipartite::bipartite_approx_detailed;
use dss_core::enumerate::EnumerationStats;
use dss_core::exact::{brute_force_opt, exact_bounded_with_stats};
use dss_core::generate::{bipartite_random, connected_random, gnp};
use dss_core::graph::{complete, cycle, path, power_graph, star};
use dss_core::greedy::{greedy_scattered, SelectionRule};
use dss_core::io::{parse_decomposition, parse_graph, write_decomposition, write_graph, ParsedGraph};
use dss_core::reductions::{
    cycle_plus_matching, gadget_tree_instance, reduce_is_even, reduce_is_odd, GadgetConfig,
    ReductionCertificate,
};
use dss_core::report::{RunReport, SolverParams};
use dss_core::rho::{rho_approx_even_detailed, rho_approx_odd_detailed, DegreeMode, Rho};
use dss_core::treewidth::{
    min_degree_decomposition, power_decomposition, power_width_bound, validate_decomposition,
};
use dss_core::{is_scattered, Error, Graph, ProblemInstance, Vertex};

use crate::{
    Algo, BenchArgs, Command, DegreeModeArg, GenerateArgs, GraphFormat, GraphKind, OracleArgs,
    Output, PowerArgs, ReduceArgs, ReduceMode, ReportFormat, SolveArgs, TwArgs, VerifyArgs,
};

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_PRECONDITION: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedDistance { .. }
            | Error::NotBipartite
            | Error::InvalidBipartition(_)
            | Error::NodeCapExceeded { .. } => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

pub fn run(command: Command) -> Outcome<ExitCode> {
    match command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::Generate(a) => generate(a),
        Command::Reduce(a) => reduce(a),
        Command::Power(a) => power(a),
        Command::Twtransform(a) => twtransform(a),
        Command::Bench(a) => bench(a),
    }
}

fn read_text(path: &Path) -> Outcome<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn read_graph(path: &Path) -> Outcome<ParsedGraph> {
    parse_graph(&read_text(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(output: &Output, text: &str) -> Outcome<()> {
    match &output.out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn parse_rho(s: &str) -> Outcome<Rho> {
    s.parse::<Rho>().map_err(Failure::from)
}

fn parse_rule(s: &str) -> Outcome<SelectionRule> {
    s.parse::<SelectionRule>().map_err(Failure::from)
}

fn telemetry_from(stats: EnumerationStats) -> BTreeMap<String, u64> {
    BTreeMap::from([
        ("examined".to_string(), stats.examined),
        ("budget".to_string(), stats.budget as u64),
        (
            "max_candidates".to_string(),
            u64::try_from(stats.max_candidates).unwrap_or(u64::MAX),
        ),
    ])
}

struct SolverRun {
    params: SolverParams,
    vertices: Vec<Vertex>,
    telemetry: BTreeMap<String, u64>,
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Exact => "exact",
        Algo::Greedy => "greedy",
        Algo::Bipartite => "bipartite",
        Algo::RhoEven => "rho-even",
        Algo::RhoOdd => "rho-odd",
    }
}

fn run_solver(
    g: &Graph,
    d: usize,
    algo: Algo,
    rho: Option<Rho>,
    rule: SelectionRule,
    mode: DegreeMode,
) -> Outcome<SolverRun> {
    let inst = ProblemInstance::new(g.clone(), d)?;
    let mut params = SolverParams {
        name: algo_name(algo).to_string(),
        d,
        rho: None,
        rule: None,
        seed: None,
    };
    let needs_rho = matches!(algo, Algo::RhoEven | Algo::RhoOdd);
    let rho = match (needs_rho, rho) {
        (true, Some(r)) => {
            params.rho = Some(r.to_string());
            Some(r)
        }
        (true, None) => return Err(Failure::input(format!("--algo {} needs --rho", params.name))),
        (false, Some(_)) => {
            return Err(Failure::input(format!("--rho does not apply to --algo {}", params.name)))
        }
        (false, None) => None,
    };
    let (vertices, telemetry) = match algo {
        Algo::Exact => {
            let (s, stats) = exact_bounded_with_stats(&inst);
            (s.into_vertices(), telemetry_from(stats))
        }
        Algo::Greedy => {
            params.rule = Some(rule.name().to_string());
            let out = greedy_scattered(&inst, rule);
            let t = BTreeMap::from([("picks".to_string(), out.picks.len() as u64)]);
            (out.solution.into_vertices(), t)
        }
        Algo::Bipartite => {
            let out = bipartite_approx_detailed(&inst)?;
            let t = BTreeMap::from([
                ("side_a".to_string(), out.side_a.len() as u64),
                ("side_b".to_string(), out.side_b.len() as u64),
            ]);
            (out.solution.into_vertices(), t)
        }
        Algo::RhoEven => {
            let out = rho_approx_even_detailed(&inst, rho.expect("checked above"))?;
            (out.solution.into_vertices(), telemetry_from(out.stats))
        }
        Algo::RhoOdd => {
            params.rule = Some(match mode {
                DegreeMode::Residual => "degree-residual".to_string(),
                DegreeMode::Static => "degree-static".to_string(),
            });
            let out = rho_approx_odd_detailed(&inst, rho.expect("checked above"), mode)?;
            let mut t = telemetry_from(out.stats);
            t.insert("phase1_selected".into(), out.selected.len() as u64);
            t.insert("phase1_excluded".into(), out.excluded.len() as u64);
            t.insert("phase1_remaining".into(), out.remaining.len() as u64);
            t.insert("phase2_picked".into(), out.phase2.len() as u64);
            (out.solution.into_vertices(), t)
        }
    };
    Ok(SolverRun {
        params,
        vertices,
        telemetry,
    })
}

fn oracle_size(g: &Graph, d: usize, cap: usize) -> Outcome<usize> {
    let inst = ProblemInstance::new(g.clone(), d)?;
    Ok(brute_force_opt(&inst, cap)?.len())
}

fn finish_report(mut report: RunReport, parsed: &ParsedGraph, timing: Option<Instant>) -> RunReport {
    report.labels = Some(report.vertices.iter().map(|&v| parsed.labels[v]).collect());
    report.wall_time_ms = timing.map(|t| t.elapsed().as_secs_f64() * 1e3);
    report
}

fn report_text(r: &RunReport) -> String {
    let mut s = String::new();
    let fmt_opt = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
    writeln!(
        s,
        "solver {} d={} rho={} rule={}",
        r.solver.name,
        r.solver.d,
        fmt_opt(&r.solver.rho),
        fmt_opt(&r.solver.rule)
    )
    .unwrap();
    writeln!(
        s,
        "instance n={} m={} max_degree={} components={}",
        r.meta.n, r.meta.m, r.meta.max_degree, r.meta.components
    )
    .unwrap();
    writeln!(s, "size {}", r.size).unwrap();
    writeln!(s, "feasible {}", r.feasible).unwrap();
    let ids: Vec<String> = r.vertices.iter().map(|v| v.to_string()).collect();
    writeln!(s, "vertices {}", ids.join(" ")).unwrap();
    for (k, v) in &r.telemetry {
        writeln!(s, "telemetry {k} {v}").unwrap();
    }
    if let (Some(o), Some(ratio)) = (r.oracle_size, r.ratio) {
        writeln!(s, "oracle {o} ratio {ratio:.4}").unwrap();
    }
    if let Some(t) = r.wall_time_ms {
        writeln!(s, "wall_time_ms {t:.3}").unwrap();
    }
    s
}

fn render(r: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(r),
        ReportFormat::Text => report_text(r),
    }
}

fn degree_mode(m: DegreeModeArg) -> DegreeMode {
    match m {
        DegreeModeArg::Residual => DegreeMode::Residual,
        DegreeModeArg::Static => DegreeMode::Static,
    }
}

fn solve(a: SolveArgs) -> Outcome<ExitCode> {
    let parsed = read_graph(&a.input.input)?;
    let rho = a.rho.as_deref().map(parse_rho).transpose()?;
    let rule = parse_rule(&a.rule)?;
    let start = a.timing.then(Instant::now);
    let run = run_solver(&parsed.graph, a.d, a.algo, rho, rule, degree_mode(a.degree_mode))?;
    let mut report = RunReport::new(&parsed.graph, run.params, run.vertices, run.telemetry)?;
    report = finish_report(report, &parsed, start);
    if let Some(cap) = a.oracle_cap {
        if parsed.graph.n() <= cap {
            report = report.with_oracle(oracle_size(&parsed.graph, a.d, cap)?);
        }
    }
    emit(&a.output, &render(&report, a.format))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyReport {
    d: usize,
    set: Vec<Vertex>,
    feasible: bool,
    witness: Option<(Vertex, Vertex)>,
}

fn verify(a: VerifyArgs) -> Outcome<ExitCode> {
    let parsed = read_graph(&a.input.input)?;
    let inst = ProblemInstance::new(parsed.graph, a.d)?;
    let s = is_scattered(&inst, &a.set.0)?;
    let out = VerifyReport {
        d: a.d,
        set: s.vertices().to_vec(),
        feasible: s.certified(),
        witness: s.witness(),
    };
    let text = match a.format {
        ReportFormat::Json => json(&out),
        ReportFormat::Text => match out.witness {
            None => "feasible\n".to_string(),
            Some((u, v)) => format!("infeasible: vertices {u} and {v} are closer than {}\n", a.d),
        },
    };
    emit(&a.output, &text)?;
    Ok(if out.feasible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INFEASIBLE)
    })
}

fn oracle(a: OracleArgs) -> Outcome<ExitCode> {
    let parsed = read_graph(&a.input.input)?;
    let start = a.timing.then(Instant::now);
    let inst = ProblemInstance::new(parsed.graph.clone(), a.d)?;
    let s = brute_force_opt(&inst, a.oracle_cap)?;
    let params = SolverParams {
        name: "oracle".into(),
        d: a.d,
        rho: None,
        rule: None,
        seed: None,
    };
    let report = RunReport::new(&parsed.graph, params, s.into_vertices(), BTreeMap::new())?;
    let report = finish_report(report, &parsed, start);
    let size = report.size;
    emit(&a.output, &render(&report.with_oracle(size), a.format))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct GraphJson<'a> {
    n: usize,
    m: usize,
    /// 0-based endpoints.
    edges: Vec<(Vertex, Vertex)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a ReductionCertificate>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    info: BTreeMap<String, serde_json::Value>,
}

fn render_graph(
    g: &Graph,
    format: GraphFormat,
    certificate: Option<&ReductionCertificate>,
    info: BTreeMap<String, serde_json::Value>,
) -> String {
    match format {
        GraphFormat::Json => json(&GraphJson {
            n: g.n(),
            m: g.m(),
            edges: g.edges().collect(),
            certificate,
            info,
        }),
        GraphFormat::Dss => {
            let mut comments: Vec<String> = info.iter().map(|(k, v)| format!("{k} {v}")).collect();
            if let Some(c) = certificate {
                comments.push(format!("certificate {}", serde_json::to_string(c).expect("serializable")));
            }
            write_graph(g, &comments)
        }
    }
}

fn require_seed(seed: Option<u64>, what: &str) -> Outcome<u64> {
    seed.ok_or_else(|| Failure::input(format!("{what} is randomized and needs --seed")))
}

fn kind_name(kind: GraphKind) -> String {
    kind.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn generate(a: GenerateArgs) -> Outcome<ExitCode> {
    if !(0.0..=1.0).contains(&a.p) {
        return Err(Failure::input("--p must lie in [0, 1]"));
    }
    let mut info = BTreeMap::new();
    info.insert("kind".to_string(), kind_name(a.kind).into());
    let g = match a.kind {
        GraphKind::Path => path(a.n),
        GraphKind::Cycle => {
            if a.n < 3 {
                return Err(Failure::input("a cycle needs --n >= 3"));
            }
            cycle(a.n)
        }
        GraphKind::Complete => complete(a.n),
        GraphKind::Star => star(a.n),
        GraphKind::CycleMatching => {
            let seed = require_seed(a.seed, "cycle-matching")?;
            info.insert("seed".into(), seed.into());
            cycle_plus_matching(a.n, seed)?
        }
        GraphKind::Gnp | GraphKind::Connected | GraphKind::Bipartite => {
            let seed = require_seed(a.seed, "this kind")?;
            info.insert("seed".into(), seed.into());
            info.insert("p".into(), a.p.into());
            match a.kind {
                GraphKind::Gnp => gnp(a.n, a.p, seed),
                GraphKind::Connected => connected_random(a.n, a.p, seed),
                _ => bipartite_random(a.n, a.n2.unwrap_or(a.n), a.p, seed),
            }
        }
    };
    emit(&a.output, &render_graph(&g, a.format, None, info))?;
    Ok(ExitCode::SUCCESS)
}

fn reduce(a: ReduceArgs) -> Outcome<ExitCode> {
    let parsed = read_graph(&a.input.input)?;
    let g = &parsed.graph;
    let mut info = BTreeMap::new();
    info.insert("d".to_string(), a.d.into());
    let (product, certificate) = match a.mode {
        ReduceMode::IsEven => {
            info.insert("mode".into(), "is-even".into());
            reduce_is_even(g, a.d)?
        }
        ReduceMode::IsOdd => {
            info.insert("mode".into(), "is-odd".into());
            reduce_is_odd(g, a.d)?
        }
        ReduceMode::Gadget => {
            let seed = require_seed(a.seed, "gadget mode")?;
            let bound = a.max_degree.unwrap_or(g.max_degree().max(2));
            let cfg = GadgetConfig::new(a.d, bound, a.epsilon, seed)?;
            let inst = gadget_tree_instance(g, &cfg)?;
            info.insert("mode".into(), "gadget".into());
            info.insert("seed".into(), seed.into());
            info.insert("epsilon".into(), a.epsilon.into());
            info.insert("delta".into(), cfg.delta().into());
            info.insert("power_exponent".into(), cfg.power_exponent().into());
            info.insert("degree_bound".into(), cfg.degree_bound().into());
            info.insert("max_degree".into(), inst.graph.max_degree().into());
            info.insert("degree_bound_ok".into(), inst.meets_degree_bound().into());
            info.insert("diameters_ok".into(), inst.diameters_meet_bound().into());
            (inst.graph, inst.certificate)
        }
    };
    emit(&a.output, &render_graph(&product, a.format, Some(&certificate), info))?;
    Ok(ExitCode::SUCCESS)
}

fn power(a: PowerArgs) -> Outcome<ExitCode> {
    let parsed = read_graph(&a.input.input)?;
    let p = power_graph(&parsed.graph, a.q)?;
    let info = BTreeMap::from([("q".to_string(), a.q.into())]);
    emit(&a.output, &render_graph(&p, a.format, None, info))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TwReport {
    d: usize,
    input_width: usize,
    width: usize,
    width_bound: u128,
    valid: bool,
    /// 0-based vertex ids per bag.
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
}

fn twtransform(a: TwArgs) -> Outcome<ExitCode> {
    let parsed = read_graph(&a.input.input)?;
    let g = &parsed.graph;
    let t = match &a.decomposition {
        Some(p) => parse_decomposition(&read_text(p)?)
            .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
        None => min_degree_decomposition(g),
    };
    let out = power_decomposition(g, &t, a.d)?;
    let valid = validate_decomposition(&power_graph(g, a.d)?, &out).is_ok();
    let report = TwReport {
        d: a.d,
        input_width: t.width(),
        width: out.width(),
        width_bound: power_width_bound(t.width(), g.max_degree(), a.d),
        valid,
        bags: out.bags().to_vec(),
        edges: out.edges().to_vec(),
    };
    let text = match a.format {
        GraphFormat::Json => json(&report),
        GraphFormat::Dss => format!(
            "c d {}\nc input_width {}\nc width {}\nc width_bound {}\nc valid {}\n{}",
            report.d,
            report.input_width,
            report.width,
            report.width_bound,
            report.valid,
            write_decomposition(&out)
        ),
    };
    emit(&a.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn instance_files(dir: &Path) -> Outcome<Vec<PathBuf>> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?
            .path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn bench(a: BenchArgs) -> Outcome<ExitCode> {
    let rule = parse_rule(&a.rule)?;
    let rhos: Vec<Rho> = a.rho.iter().map(|s| parse_rho(s)).collect::<Outcome<_>>()?;
    let mut reports = Vec::new();
    let mut skipped = 0usize;
    for file in instance_files(&a.dir)? {
        let parsed = read_graph(&file)?;
        let name = file
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        for &d in &a.d {
            let oracle = match a.oracle_cap {
                Some(cap) if parsed.graph.n() <= cap => Some(oracle_size(&parsed.graph, d, cap)?),
                _ => None,
            };
            for &algo in &a.algo {
                let grid: Vec<Option<Rho>> = match algo {
                    Algo::RhoEven | Algo::RhoOdd => rhos.iter().copied().map(Some).collect(),
                    _ => vec![None],
                };
                for rho in grid {
                    let start = a.timing.then(Instant::now);
                    let run = match run_solver(&parsed.graph, d, algo, rho, rule, DegreeMode::Residual) {
                        Ok(run) => run,
                        Err(f) if f.code == EXIT_PRECONDITION => {
                            skipped += 1;
                            continue;
                        }
                        Err(f) => return Err(f),
                    };
                    let mut report = RunReport::new(&parsed.graph, run.params, run.vertices, run.telemetry)?;
                    report = finish_report(report, &parsed, start);
                    report.instance = Some(name.clone());
                    if let Some(o) = oracle {
                        report = report.with_oracle(o);
                    }
                    reports.push(report);
                }
            }
        }
    }
    if skipped > 0 {
        eprintln!("dss bench: skipped {skipped} runs whose solver preconditions failed");
    }
    let text = match a.format {
        ReportFormat::Json => reports.iter().map(json).collect(),
        ReportFormat::Text => bench_table(&reports, a.timing),
    };
    emit(&a.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn bench_table(reports: &[RunReport], timing: bool) -> String {
    let mut s = String::new();
    write!(
        s,
        "{:<24} {:>3} {:<10} {:>6} {:>5} {:>6} {:>7} {:>8}",
        "instance", "d", "algo", "rho", "size", "oracle", "ratio", "feasible"
    )
    .unwrap();
    if timing {
        write!(s, " {:>10}", "ms").unwrap();
    }
    s.push('\n');
    for r in reports {
        let dash = || "-".to_string();
        write!(
            s,
            "{:<24} {:>3} {:<10} {:>6} {:>5} {:>6} {:>7} {:>8}",
            r.instance.clone().unwrap_or_else(dash),
            r.solver.d,
            r.solver.name,
            r.solver.rho.clone().unwrap_or_else(dash),
            r.size,
            r.oracle_size.map_or_else(dash, |o| o.to_string()),
            r.ratio.map_or_else(dash, |x| format!("{x:.3}")),
            r.feasible
        )
        .unwrap();
        if let Some(t) = r.wall_time_ms {
            write!(s, " {t:>10.3}").unwrap();
        }
        s.push('\n');
    }
    s
}
