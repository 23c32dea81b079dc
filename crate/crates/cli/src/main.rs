//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (invalid input, failed check),
//! 2 usage error. Reports are JSON on stdout; when an artifact (graph or
//! decomposition text) is written to stdout instead, the report goes to
//! stderr. Diagnostics always go to stderr.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use shallow::decomp::min_degree_decomposition;
use shallow::format::{
    decomposition_to_dot, graph_to_dot, parse_decomposition, parse_graph, write_decomposition, write_graph, GraphFile,
};
use shallow::generators::{
    apex_over_grid, complete, cycle, grid, path, random_planar_triangulation, star, subdivide, toroidal_grid, wall,
};
use shallow::graph::choose_root;
use shallow::oracles::TreewidthCertificate;
use shallow::{
    bfs_layering, checks, dp_ds, dp_mis, dp_subiso, dp_vc, exact_treewidth, genus_td, make_nice, oracle_solve,
    planar_bfs_td, ptas, slice_td, subiso_backtracking, subiso_driver, validate, EmbeddedGraph, Graph, OracleBudget,
    Problem, TreeDecomposition,
};

#[derive(Parser)]
#[command(name = "shallow", version, about = "Shallow tree decompositions of planar and bounded-genus graphs")]
struct Cli {
    /// Worker threads for offset and window evaluation (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in the text format.
    Generate(GenerateArgs),
    /// Build a tree decomposition.
    Decompose(DecomposeArgs),
    /// Check a decomposition against a graph.
    Validate(ValidateArgs),
    /// Solve a problem exactly over a tree decomposition.
    Solve(SolveArgs),
    /// Run a level-slicing approximation scheme.
    Ptas(PtasArgs),
    /// Search for a fixed pattern.
    Subiso(SubisoArgs),
    /// Run an exhaustive reference solver.
    Oracle(OracleArgs),
    /// Time planar decompositions of growing grids.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Grid,
    Torus,
    Wall,
    Path,
    Cycle,
    Star,
    Complete,
    Apex,
    Triangulation,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    kind: Kind,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Wall size, apex grid side, or vertex count for the other kinds.
    #[arg(long)]
    n: Option<usize>,
    /// Replace each edge by a path of this many edges.
    #[arg(long)]
    subdivide: Option<usize>,
    /// Random seed (default: SHALLOW_SEED, else 0).
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Output {
    /// Write the artifact here and the report to stdout.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Emit DOT instead of the text format.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    PlanarBfs,
    Genus,
    Slice,
    MinDegree,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long, value_enum, default_value = "planar-bfs")]
    method: Method,
    /// BFS root (default: a vertex of small eccentricity).
    #[arg(long)]
    root: Option<usize>,
    #[arg(long)]
    lo: Option<usize>,
    #[arg(long)]
    hi: Option<usize>,
    /// With `--method slice`: write the slice graph here. The emitted
    /// decomposition uses slice vertex ids.
    #[arg(long)]
    slice_graph: Option<PathBuf>,
    /// Graph file; stdin when absent or `-`.
    input: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(short, long)]
    decomposition: PathBuf,
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Mis,
    Vc,
    Ds,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Problem {
        match p {
            ProblemArg::Mis => Problem::Mis,
            ProblemArg::Vc => Problem::Vc,
            ProblemArg::Ds => Problem::Ds,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: ProblemArg,
    input: Option<PathBuf>,
}

#[derive(Args)]
struct PtasArgs {
    #[arg(long)]
    problem: ProblemArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    k: u64,
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SubisoArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    induced: bool,
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleProblem {
    Mis,
    Vc,
    Ds,
    Treewidth,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, required_unless_present = "pattern", conflicts_with = "pattern")]
    problem: Option<OracleProblem>,
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(long, requires = "pattern")]
    induced: bool,
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1_000)]
    min_edges: usize,
    #[arg(long, default_value_t = 100_000)]
    max_edges: usize,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    repeats: u64,
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    input_fingerprint: Option<String>,
    outputs: Value,
    wall_time_ms: f64,
    version: &'static str,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<shallow::Error> for Failure {
    fn from(e: shallow::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Run<T> = Result<T, Failure>;

/// What a subcommand produced.
struct Produced {
    outputs: Value,
    fingerprint: Option<String>,
    artifact: Option<(String, Option<PathBuf>)>,
    /// Set when a check failed; the report is still printed.
    failed: Option<String>,
}

impl Produced {
    fn report(outputs: Value, fingerprint: Option<String>) -> Self {
        Produced { outputs, fingerprint, artifact: None, failed: None }
    }
}

fn fingerprint(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn read_input(path: &Option<PathBuf>) -> Run<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Domain(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

struct Input {
    file: GraphFile,
    embedded: Option<EmbeddedGraph>,
    fingerprint: String,
}

fn load_graph(path: &Option<PathBuf>) -> Run<Input> {
    let text = read_input(path)?;
    let file = parse_graph(&text)?;
    let embedded = file.embedded()?;
    Ok(Input { file, embedded, fingerprint: fingerprint(&text) })
}

fn require_planar(input: &Input) -> Run<&EmbeddedGraph> {
    match &input.embedded {
        None => Err(Failure::Domain("input has no rotation system; a planar embedding is required".into())),
        Some(e) if !e.is_planar() => Err(Failure::Domain(format!("embedding has euler genus {}, not planar", e.genus()))),
        Some(e) => Ok(e),
    }
}

fn seed(flag: Option<u64>) -> Run<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SHALLOW_SEED") {
        Err(_) => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("SHALLOW_SEED must be an integer, got `{v}`"))),
    }
}

fn need(value: Option<usize>, flag: &str, kind: &str) -> Run<usize> {
    value.ok_or_else(|| Failure::Usage(format!("--kind {kind} needs --{flag}")))
}

fn generate(a: &GenerateArgs) -> Run<Produced> {
    let seed = seed(a.seed)?;
    let (name, embedded, plain): (&str, Option<EmbeddedGraph>, Option<Graph>) = match a.kind {
        Kind::Grid => ("grid", Some(grid(need(a.rows, "rows", "grid")?, need(a.cols, "cols", "grid")?)?), None),
        Kind::Torus => ("torus", Some(toroidal_grid(need(a.rows, "rows", "torus")?, need(a.cols, "cols", "torus")?)?), None),
        Kind::Wall => ("wall", Some(wall(need(a.n, "n", "wall")?)?.embedded), None),
        Kind::Path => ("path", Some(path(need(a.n, "n", "path")?)), None),
        Kind::Cycle => ("cycle", Some(cycle(need(a.n, "n", "cycle")?)?), None),
        Kind::Star => ("star", Some(star(need(a.n, "n", "star")?)), None),
        Kind::Triangulation => {
            ("triangulation", Some(random_planar_triangulation(need(a.n, "n", "triangulation")?, seed)?), None)
        }
        Kind::Complete => ("complete", None, Some(complete(need(a.n, "n", "complete")?))),
        Kind::Apex => ("apex", None, Some(apex_over_grid(need(a.n, "n", "apex")?)?)),
    };
    let embedded = match (embedded, a.subdivide) {
        (Some(e), Some(f)) => Some(subdivide(&e, f)?),
        (None, Some(_)) => return Err(Failure::Usage("--subdivide needs an embedded kind".into())),
        (e, None) => e,
    };
    let graph = embedded.as_ref().map(|e| e.graph().clone()).or(plain).expect("one of the two is set");
    let text = if a.out.dot {
        graph_to_dot(&graph)
    } else {
        write_graph(&graph, embedded.as_ref().map(|e| e.rotations()))
    };
    let outputs = json!({
        "kind": name,
        "vertices": graph.n(),
        "edges": graph.m(),
        "embedded": embedded.is_some(),
        "euler_genus": embedded.as_ref().map(|e| e.genus()),
        "seed": matches!(a.kind, Kind::Triangulation).then_some(seed),
        "artifact_sha256": fingerprint(&text),
    });
    Ok(Produced { outputs, fingerprint: None, artifact: Some((text, a.out.output.clone())), failed: None })
}

fn decompose(a: &DecomposeArgs) -> Run<Produced> {
    let input = load_graph(&a.input)?;
    let g = &input.file.graph;
    if g.n() == 0 {
        return Err(Failure::Domain("graph has no vertices".into()));
    }
    let root = match a.root {
        Some(r) => {
            g.check_vertex(r)?;
            r
        }
        None => choose_root(g, 16),
    };
    let mut checked_against: Option<Graph> = None;
    let (td, extra): (TreeDecomposition, Value) = match a.method {
        Method::PlanarBfs => {
            let e = require_planar(&input)?;
            let pd = planar_bfs_td(e, root)?;
            let depth = bfs_layering(g, root)?.depth;
            let w = pd.td.width();
            (pd.td, json!({"root": root, "depth": depth, "bound": 3 * depth, "bound_holds": w <= 3 * depth}))
        }
        Method::Genus => {
            let e = input.embedded.as_ref().ok_or_else(|| Failure::Domain("input has no rotation system".into()))?;
            let gd = genus_td(e, root)?;
            let bound = gd.width_bound();
            let w = gd.td.width();
            let extra = json!({
                "root": root,
                "depth": gd.depth,
                "euler_genus": e.genus(),
                "leftover_edges": gd.cut.leftover.len(),
                "cut_vertices": gd.cut.vertices.len(),
                "cut_size_bound": gd.cut.size_bound(),
                "bound": bound,
                "bound_holds": w <= bound,
            });
            (gd.td, extra)
        }
        Method::Slice => {
            let e = require_planar(&input)?;
            let layering = bfs_layering(g, root)?;
            let lo = a.lo.unwrap_or(0);
            let hi = a.hi.unwrap_or(layering.depth);
            let s = slice_td(e, &layering, lo, hi)?;
            let bound = 3 * (hi - lo + 2);
            let w = s.td.width();
            if let Some(path) = &a.slice_graph {
                fs::write(path, write_graph(&s.graph, None))
                    .map_err(|err| Failure::Domain(format!("cannot write {}: {err}", path.display())))?;
            }
            let extra = json!({
                "root": root, "lo": lo, "hi": hi, "slice_vertices": s.back_map,
                "bound": bound, "bound_holds": w <= bound,
            });
            checked_against = Some(s.graph);
            (s.td, extra)
        }
        Method::MinDegree => (min_degree_decomposition(g), json!({})),
    };
    if a.slice_graph.is_some() && !matches!(a.method, Method::Slice) {
        return Err(Failure::Usage("--slice-graph only applies to --method slice".into()));
    }
    let report = validate(&td, checked_against.as_ref().unwrap_or(g));
    let mut outputs = json!({
        "method": method_name(a.method),
        "nodes": td.len(),
        "width": td.width(),
        "valid": report.is_valid(),
    });
    merge(&mut outputs, extra);
    let text = if a.out.dot { decomposition_to_dot(&td) } else { write_decomposition(&td) };
    let failed = match (&report.violation, outputs.get("bound_holds").and_then(Value::as_bool)) {
        (Some(v), _) => Some(format!("decomposition invalid: {v}")),
        (_, Some(false)) => Some("width bound violated".to_string()),
        _ => None,
    };
    Ok(Produced { outputs, fingerprint: Some(input.fingerprint), artifact: Some((text, a.out.output.clone())), failed })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::PlanarBfs => "planar-bfs",
        Method::Genus => "genus",
        Method::Slice => "slice",
        Method::MinDegree => "min-degree",
    }
}

fn merge(into: &mut Value, extra: Value) {
    if let (Some(a), Value::Object(b)) = (into.as_object_mut(), extra) {
        a.extend(b);
    }
}

fn run_validate(a: &ValidateArgs) -> Run<Produced> {
    let input = load_graph(&a.input)?;
    let text = fs::read_to_string(&a.decomposition)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", a.decomposition.display())))?;
    let td = parse_decomposition(&text)?;
    let r = validate(&td, &input.file.graph);
    let violation = r.violation.as_ref().map(|v| v.to_string());
    let outputs = json!({"valid": r.is_valid(), "width": r.width, "nodes": td.len(), "violation": violation});
    let fp = fingerprint(&format!("{}{}", input.fingerprint, fingerprint(&text)));
    Ok(Produced { outputs, fingerprint: Some(fp), artifact: None, failed: violation.map(|v| format!("invalid: {v}")) })
}

/// Decomposition used by exact solvers: the planar BFS construction when a
/// planar embedding is available (smaller of it and the heuristic), the
/// heuristic otherwise.
fn best_decomposition(input: &Input) -> Run<(TreeDecomposition, &'static str)> {
    let g = &input.file.graph;
    let heuristic = min_degree_decomposition(g);
    if let Some(e) = input.embedded.as_ref().filter(|e| e.is_planar() && g.is_connected() && g.n() > 0) {
        let pd = planar_bfs_td(e, choose_root(g, 16))?;
        if pd.td.width() <= heuristic.width() {
            return Ok((pd.td, "planar-bfs"));
        }
    }
    Ok((heuristic, "min-degree"))
}

fn solve(a: &SolveArgs) -> Run<Produced> {
    let input = load_graph(&a.input)?;
    let g = &input.file.graph;
    let (td, method) = best_decomposition(&input)?;
    let nd = make_nice(&td, g)?;
    let all: Vec<usize> = (0..g.n()).collect();
    let problem = Problem::from(a.problem);
    let witness = match problem {
        Problem::Mis => dp_mis(&nd, g)?,
        Problem::Vc => dp_vc(&nd, g)?,
        Problem::Ds => dp_ds(&nd, g, &all)?,
    };
    let verified = feasible(problem, g, &witness);
    let outputs = json!({
        "problem": problem.name(),
        "value": witness.len(),
        "witness": witness,
        "verified": verified,
        "decomposition": method,
        "width": td.width(),
    });
    let failed = (!verified).then(|| "witness failed verification".to_string());
    Ok(Produced { outputs, fingerprint: Some(input.fingerprint), artifact: None, failed })
}

fn feasible(problem: Problem, g: &Graph, set: &[usize]) -> bool {
    match problem {
        Problem::Mis => checks::is_independent(g, set),
        Problem::Vc => checks::is_vertex_cover(g, set),
        Problem::Ds => checks::dominates(g, set, &(0..g.n()).collect::<Vec<_>>()),
    }
}

fn run_ptas(a: &PtasArgs) -> Run<Produced> {
    let input = load_graph(&a.input)?;
    let e = require_planar(&input)?;
    let g = e.graph();
    let k = a.k as usize;
    let problem = Problem::from(a.problem);
    let out = ptas(e, problem, k)?;
    let verified = feasible(problem, g, &out.solution);
    let budget = OracleBudget::default();
    let (opt, bound_checked) = if g.n() <= budget.max_solve_vertices {
        let opt = oracle_solve(problem, g, &budget)?.value;
        let holds = match problem {
            Problem::Mis => out.value + opt / k >= opt,
            Problem::Vc => out.value <= opt + opt / k,
            Problem::Ds => out.value <= opt + 2 * opt.div_ceil(k),
        };
        (Some(opt), Some(holds))
    } else {
        (None, None)
    };
    let outputs = json!({
        "problem": problem.name(),
        "k": k,
        "value": out.value,
        "solution": out.solution,
        "offset_chosen": out.offsets_chosen,
        "per_offset_values": out.per_offset_values,
        "max_slice_width": out.max_slice_width,
        "verified": verified,
        "oracle_optimum": opt,
        "bound_checked": bound_checked,
    });
    let failed = if !verified {
        Some("solution failed verification".to_string())
    } else if bound_checked == Some(false) {
        Some("approximation bound violated".to_string())
    } else {
        None
    };
    Ok(Produced { outputs, fingerprint: Some(input.fingerprint), artifact: None, failed })
}

fn load_pattern(path: &PathBuf) -> Run<(Graph, String)> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
    Ok((parse_graph(&text)?.graph, fingerprint(&text)))
}

fn subiso(a: &SubisoArgs) -> Run<Produced> {
    let input = load_graph(&a.input)?;
    let (h, hfp) = load_pattern(&a.pattern)?;
    let g = &input.file.graph;
    let planar = input.embedded.as_ref().filter(|e| e.is_planar());
    let (witness, method, extra) = match planar {
        Some(e) if h.is_connected() && h.n() > 0 => {
            let s = subiso_driver(e, &h, a.induced)?;
            (s.witness, "level-windows", json!({"window_levels": s.window, "offsets": s.offsets, "windows": s.windows}))
        }
        _ => {
            let td = min_degree_decomposition(g);
            let nd = make_nice(&td, g)?;
            (dp_subiso(&nd, g, &h, a.induced)?, "whole-graph", json!({"width": td.width()}))
        }
    };
    let verified = witness.as_ref().map(|m| checks::verify_embedding_map(g, &h, m, a.induced));
    let mut outputs = json!({
        "induced": a.induced,
        "found": witness.is_some(),
        "witness": witness,
        "verified": verified,
        "method": method,
    });
    merge(&mut outputs, extra);
    let failed = (verified == Some(false)).then(|| "witness failed verification".to_string());
    let fp = fingerprint(&format!("{}{hfp}", input.fingerprint));
    Ok(Produced { outputs, fingerprint: Some(fp), artifact: None, failed })
}

fn oracle(a: &OracleArgs) -> Run<Produced> {
    let input = load_graph(&a.input)?;
    let g = &input.file.graph;
    let budget = OracleBudget::default();
    if let Some(p) = &a.pattern {
        let (h, hfp) = load_pattern(p)?;
        let r = subiso_backtracking(g, &h, a.induced, &budget)?;
        let outputs = json!({"induced": a.induced, "found": r.first.is_some(), "witness": r.first, "count": r.count});
        return Ok(Produced::report(outputs, Some(fingerprint(&format!("{}{hfp}", input.fingerprint)))));
    }
    let outputs = match a.problem.expect("clap requires a problem or a pattern") {
        OracleProblem::Treewidth => {
            let TreewidthCertificate { width, ordering, decomposition } = exact_treewidth(g, &budget)?;
            json!({"problem": "treewidth", "value": width, "ordering": ordering, "nodes": decomposition.len()})
        }
        other => {
            let problem = match other {
                OracleProblem::Mis => Problem::Mis,
                OracleProblem::Vc => Problem::Vc,
                _ => Problem::Ds,
            };
            let s = oracle_solve(problem, g, &budget)?;
            json!({"problem": problem.name(), "value": s.value, "witness": s.witness})
        }
    };
    Ok(Produced::report(outputs, Some(input.fingerprint)))
}

fn bench(a: &BenchArgs) -> Run<Produced> {
    if a.min_edges < 4 || a.max_edges < a.min_edges {
        return Err(Failure::Usage("need 4 <= --min-edges <= --max-edges".into()));
    }
    let mut rows = Vec::new();
    let mut m_target = a.min_edges as f64;
    while m_target <= a.max_edges as f64 * 1.0001 {
        let side = ((m_target / 2.0).sqrt().round() as usize).max(2);
        let g = grid(side, side)?;
        let root = (side / 2) * side + side / 2;
        let mut times = Vec::new();
        let mut depth = 0;
        for _ in 0..a.repeats {
            let start = Instant::now();
            let pd = planar_bfs_td(&g, root)?;
            times.push(start.elapsed().as_secs_f64());
            depth = pd.depth;
        }
        times.sort_by(f64::total_cmp);
        rows.push((side, g.graph().m(), g.graph().n(), depth, times[times.len() / 2]));
        m_target *= 2.0;
    }
    let ratios: Vec<f64> = rows
        .windows(2)
        .map(|w| (w[1].4 / w[0].4).powf(1.0 / (w[1].1 as f64 / w[0].1 as f64).log2()))
        .collect();
    let worst = ratios.iter().copied().fold(0.0, f64::max);
    let outputs = json!({
        "runs": rows.iter().map(|r| json!({"side": r.0, "edges": r.1, "vertices": r.2, "depth": r.3, "seconds": r.4})).collect::<Vec<_>>(),
        "per_doubling_ratios": ratios,
        "worst_ratio": worst,
        "within_2_5": worst <= 2.5,
    });
    Ok(Produced::report(outputs, None))
}

fn execute(cli: &Cli) -> Run<Produced> {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Decompose(a) => decompose(a),
        Command::Validate(a) => run_validate(a),
        Command::Solve(a) => solve(a),
        Command::Ptas(a) => run_ptas(a),
        Command::Subiso(a) => subiso(a),
        Command::Oracle(a) => oracle(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: cannot start {jobs} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let produced = match execute(&cli) {
        Ok(p) => p,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let report = RunReport {
        command: argv.iter().skip(1).cloned().collect(),
        input_fingerprint: produced.fingerprint,
        outputs: produced.outputs,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        version: env!("CARGO_PKG_VERSION"),
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match produced.artifact {
        Some((text, None)) => {
            print!("{text}");
            eprintln!("{json}");
        }
        Some((text, Some(path))) => {
            if let Err(e) = fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
            println!("{json}");
        }
        None => println!("{json}"),
    }
    if let Some(msg) = produced.failed {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
