//! `dss`: command-line frontend for the d-scattered set solvers.
//!
//! Exit codes: 0 success, 2 input error, 3 verified set infeasible,
//! 4 solver precondition violated.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "dss", version, about = "Solvers and generators for the d-scattered set problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver on a graph file and print a run report.
    Solve(SolveArgs),
    /// Check whether a vertex set is d-scattered.
    Verify(VerifyArgs),
    /// Exact optimum by exhaustive search (small graphs only).
    Oracle(OracleArgs),
    /// Write a generated graph.
    Generate(GenerateArgs),
    /// Build a reduction instance from a source graph.
    Reduce(ReduceArgs),
    /// Write the q-th power of a graph.
    Power(PowerArgs),
    /// Turn a tree decomposition of G into one of G^d.
    Twtransform(TwArgs),
    /// Sweep solvers and parameters over a directory of graph files.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Input {
    /// Graph file in the `p dss` edge-list format, or `-` for stdin.
    input: PathBuf,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Exact,
    Greedy,
    Bipartite,
    RhoEven,
    RhoOdd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dss,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DegreeModeArg {
    Residual,
    Static,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: Input,
    /// Minimum pairwise distance.
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Approximation ratio for the rho solvers: `2`, `3/2` or `1.5`.
    #[arg(long)]
    rho: Option<String>,
    /// Greedy selection rule.
    #[arg(long, default_value = "min-degree-residual")]
    rule: String,
    /// Degree counting in phase 1 of `rho-odd`.
    #[arg(long, value_enum, default_value = "residual")]
    degree_mode: DegreeModeArg,
    /// Also run the exhaustive oracle when the graph has at most this many
    /// vertices, and report the realized ratio.
    #[arg(long)]
    oracle_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Include wall-clock time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    /// Minimum pairwise distance.
    #[arg(long)]
    d: usize,
    /// Comma-separated 0-based vertex ids; empty for the empty set.
    #[arg(long, value_parser = parse_vertex_list, default_value = "")]
    set: VertexList,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: Input,
    /// Minimum pairwise distance.
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = dss_core::exact::DEFAULT_NODE_CAP)]
    oracle_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Include wall-clock time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Path,
    Cycle,
    Complete,
    Star,
    CycleMatching,
    Gnp,
    Connected,
    Bipartite,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: GraphKind,
    /// Vertex count (for `star`, the number of leaves; for `bipartite`, the
    /// size of the first side).
    #[arg(long)]
    n: usize,
    /// Size of the second side of a `bipartite` graph (defaults to `n`).
    #[arg(long)]
    n2: Option<usize>,
    /// Edge probability for the random kinds.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Required for every random kind.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "dss")]
    format: GraphFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceMode {
    IsEven,
    IsOdd,
    Gadget,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum)]
    mode: ReduceMode,
    /// Minimum pairwise distance.
    #[arg(long)]
    d: usize,
    /// Gadget mode: degree bound of the source graph (defaults to its
    /// maximum degree, at least 2).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Gadget mode: slack exponent in (0, d/2).
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Gadget mode: required seed for the random matchings.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "dss")]
    format: GraphFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct PowerArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    q: usize,
    #[arg(long, value_enum, default_value = "dss")]
    format: GraphFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TwArgs {
    #[command(flatten)]
    input: Input,
    /// Minimum pairwise distance.
    #[arg(long)]
    d: usize,
    /// Decomposition of the input graph (`b`/`e` lines). Defaults to a
    /// min-degree elimination heuristic.
    #[arg(long)]
    decomposition: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "dss")]
    format: GraphFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of graph files; every regular file is read, in path order.
    dir: PathBuf,
    /// Comma-separated distances.
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<usize>,
    /// Comma-separated solvers.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "exact,greedy")]
    algo: Vec<Algo>,
    /// Comma-separated ratios for the rho solvers.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    rho: Vec<String>,
    /// Greedy selection rule.
    #[arg(long, default_value = "min-degree-residual")]
    rule: String,
    /// Run the exhaustive oracle on graphs with at most this many vertices.
    #[arg(long)]
    oracle_cap: Option<usize>,
    /// `json`: one report per line; `text`: an aligned table.
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Include wall-clock time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dss: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

#[derive(Clone)]
struct VertexList(Vec<usize>);

fn parse_vertex_list(s: &str) -> Result<VertexList, std::num::ParseIntError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map(VertexList)
}
