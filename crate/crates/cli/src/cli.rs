//! Command-line front end.
//!
//! Subcommands: `generate | decompose | chop | partition | spr | verify |
//! ears`. Flags may also be supplied through a JSON config file
//! (`--config`); explicit flags win. Exit codes: 0 success, 2 invalid
//! parameters or IO, 3 input not series-parallel (a clawed-cycle summary
//! goes to stderr), 4 invariant or verification failure. Machine output
//! goes to `--out` and, with `--stdout`, to stdout; diagnostics go to
//! stderr. `SPR_SPARSIFY_THREADS` bounds the concurrency of batch `verify`
//! runs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use hammock_core::chops::{delta_chop, verify_fuzzy};
use hammock_core::ears::{nested_ears_with, verify_ears, Ear, EarDecomposition, EarError};
use hammock_core::generate::{generate_series_parallel, GeneratorConfig};
use hammock_core::graph::WeightedGraph;
use hammock_core::hammock::{decompose, verify_decomposition, HammockError};
use hammock_core::metric::Metric;
use hammock_core::ratio::Ratio;
use hammock_core::recognize::ClawedCycle;
use hammock_core::scattering::{
    max_cut_count, scattering_chop, scattering_partition, verify_scattering, ScatterError,
    CHOP_CUT_LIMIT,
};
use hammock_core::spr::{distortion, verify_minor, voronoi_spr_minor, SprInstance};
use hammock_core::tree::RootedBfsTree;

use crate::dot;
use crate::json::{
    to_pretty, ChopJson, DecompositionJson, EarJson, EarsJson, GraphJson, PartitionJson,
    ReportJson, SprResultJson,
};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_SP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: msg.into() }
    }

    fn invariant(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INVARIANT, message: msg.into() }
    }

    fn not_sp(cc: &ClawedCycle) -> Self {
        let ends: Vec<usize> = cc.paths.iter().map(|p| p.last()).collect();
        Failure {
            code: EXIT_NOT_SP,
            message: format!(
                "input is not series-parallel: clawed cycle with root {} reaching cycle \
                 vertices {:?}; cycle {:?}",
                cc.root, ends, cc.cycle
            ),
        }
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Parser, Debug)]
#[command(name = "spr-sparsify", version, about = "Hammock decompositions, scattering partitions and SPR minors for series-parallel graphs")]
pub struct Cli {
    /// JSON file supplying defaults for any long flag; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also print the machine output to stdout.
    #[arg(long)]
    pub stdout: bool,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a seeded random series-parallel graph.
    Generate {
        #[arg(long)]
        seed: Option<u64>,
        /// Number of vertices (>= 2).
        #[arg(long)]
        n: Option<usize>,
        /// Probability of a series step.
        #[arg(long)]
        series_bias: Option<f64>,
        #[arg(long)]
        max_parallel: Option<usize>,
        /// Glue several blocks at cut vertices.
        #[arg(long)]
        glue: Option<bool>,
        #[arg(long)]
        blocks: Option<usize>,
        /// Weights drawn uniformly from 1..=max-weight.
        #[arg(long)]
        max_weight: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify the hammock decomposition of a graph.
    Decompose {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        root: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute a scattering chop (or a plain sharp chop) of a graph.
    Chop {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        root: Option<usize>,
        /// Sharp chop without scattering moves.
        #[arg(long)]
        plain: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify a scattering partition.
    Partition {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        delta: Option<u64>,
        /// Recursion depth override (default 3).
        #[arg(long)]
        levels: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Contract a graph onto a terminal set and measure distortion.
    Spr {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        /// Comma-separated terminal ids; falls back to the graph file's
        /// terminal list.
        #[arg(long)]
        terminals: Option<String>,
        /// Pick this many terminals deterministically from the seed.
        #[arg(long)]
        terminal_count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify artifacts against their invariants.
    Verify {
        /// Artifact kind: graph | decomposition | chop | partition | spr | ears.
        #[arg(long)]
        kind: Option<String>,
        /// Underlying graph file (required for every kind except graph).
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Artifact files; several inputs are verified concurrently.
        #[arg(long = "in", value_name = "FILE")]
        inputs: Vec<PathBuf>,
        /// Cut budget override for chop verification.
        #[arg(long)]
        budget_tau: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Nested ear decomposition of a 2-vertex-connected graph.
    Ears {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn load_config(path: &Option<PathBuf>) -> Result<BTreeMap<String, Value>, Failure> {
    match path {
        None => Ok(BTreeMap::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::usage(format!("config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("config {}: {e}", p.display())))
        }
    }
}

fn cfg_u64(cfg: &BTreeMap<String, Value>, key: &str) -> Option<u64> {
    cfg.get(key).and_then(Value::as_u64)
}

fn cfg_usize(cfg: &BTreeMap<String, Value>, key: &str) -> Option<usize> {
    cfg_u64(cfg, key).map(|x| x as usize)
}

fn cfg_f64(cfg: &BTreeMap<String, Value>, key: &str) -> Option<f64> {
    cfg.get(key).and_then(Value::as_f64)
}

fn cfg_bool(cfg: &BTreeMap<String, Value>, key: &str) -> Option<bool> {
    cfg.get(key).and_then(Value::as_bool)
}

fn cfg_path(cfg: &BTreeMap<String, Value>, key: &str) -> Option<PathBuf> {
    cfg.get(key).and_then(Value::as_str).map(PathBuf::from)
}

fn read_graph_file(path: &Path) -> Result<(WeightedGraph, GraphJson), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let j: GraphJson = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let g = j
        .to_graph()
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((g, j))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(output: &OutputArgs, text: &str) -> CmdResult {
    if output.out.is_none() && !output.stdout {
        return Err(Failure::usage("specify --out FILE and/or --stdout"));
    }
    if let Some(path) = &output.out {
        std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    if output.stdout {
        print!("{text}");
    }
    Ok(())
}

fn map_hammock_err(e: HammockError) -> Failure {
    match e {
        HammockError::NotSeriesParallel(cc) => Failure::not_sp(&cc),
        HammockError::Disconnected { .. } | HammockError::NotUnitWeight => {
            Failure::usage(e.to_string())
        }
        other => Failure::invariant(other.to_string()),
    }
}

pub fn run(cli: Cli) -> CmdResult {
    let cfg = load_config(&cli.config)?;
    match cli.command {
        Command::Generate {
            seed,
            n,
            series_bias,
            max_parallel,
            glue,
            blocks,
            max_weight,
            output,
        } => {
            let seed = seed
                .or_else(|| cfg_u64(&cfg, "seed"))
                .ok_or_else(|| Failure::usage("--seed is required for generation"))?;
            let n = n
                .or_else(|| cfg_usize(&cfg, "n"))
                .ok_or_else(|| Failure::usage("--n is required"))?;
            if n < 2 {
                return Err(Failure::usage("--n must be at least 2"));
            }
            let defaults = GeneratorConfig::default();
            let gc = GeneratorConfig {
                series_bias: series_bias
                    .or_else(|| cfg_f64(&cfg, "series-bias"))
                    .unwrap_or(defaults.series_bias),
                max_parallel: max_parallel
                    .or_else(|| cfg_usize(&cfg, "max-parallel"))
                    .unwrap_or(defaults.max_parallel),
                glue: glue.or_else(|| cfg_bool(&cfg, "glue")).unwrap_or(defaults.glue),
                max_blocks: blocks
                    .or_else(|| cfg_usize(&cfg, "blocks"))
                    .unwrap_or(defaults.max_blocks),
                max_weight: max_weight
                    .or_else(|| cfg_u64(&cfg, "max-weight"))
                    .unwrap_or(defaults.max_weight),
            };
            if !(0.0..=1.0).contains(&gc.series_bias) || gc.max_weight == 0 || gc.max_blocks == 0 {
                return Err(Failure::usage("generator parameters out of range"));
            }
            let g = generate_series_parallel(seed, n, &gc);
            match output.format.unwrap_or(Format::Json) {
                Format::Json => emit(&output, &to_pretty(&GraphJson::from_graph(&g, None, None))),
                Format::Dot => {
                    let t = RootedBfsTree::build(&g, 0)
                        .map_err(|e| Failure::usage(e.to_string()))?;
                    emit(&output, &dot::graph_dot(&g, &t))
                }
            }
        }

        Command::Decompose { r#in, root, output } => {
            let input = r#in
                .or_else(|| cfg_path(&cfg, "in"))
                .ok_or_else(|| Failure::usage("--in FILE is required"))?;
            let (g, gj) = read_graph_file(&input)?;
            let root = root.or(gj.root).unwrap_or(0);
            if root >= g.vertex_count() {
                return Err(Failure::usage(format!("root {root} out of range")));
            }
            let (t, hd) = decompose(&g, root).map_err(map_hammock_err)?;
            let metric = Metric::new(&g);
            let report = verify_decomposition(&g, &t, &metric, &hd);
            if !report.passed() {
                return Err(Failure::invariant(format!(
                    "decomposition failed verification: {}",
                    report
                        .violations
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("; ")
                )));
            }
            match output.format.unwrap_or(Format::Json) {
                Format::Json => emit(
                    &output,
                    &to_pretty(&DecompositionJson::from_decomposition(&g, &hd)),
                ),
                Format::Dot => emit(&output, &dot::decomposition_dot(&g, &t, &hd)),
            }
        }

        Command::Chop { r#in, delta, root, plain, output } => {
            let input = r#in
                .or_else(|| cfg_path(&cfg, "in"))
                .ok_or_else(|| Failure::usage("--in FILE is required"))?;
            let delta = delta
                .or_else(|| cfg_u64(&cfg, "delta"))
                .ok_or_else(|| Failure::usage("--delta is required"))?;
            if delta == 0 {
                return Err(Failure::usage("--delta must be positive"));
            }
            let (g, gj) = read_graph_file(&input)?;
            let root = root.or(gj.root).unwrap_or(0);
            if root >= g.vertex_count() {
                return Err(Failure::usage(format!("root {root} out of range")));
            }
            let width = Ratio::int(delta as i64);
            let chop_json = if plain {
                let t = RootedBfsTree::build(&g, root)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                ChopJson::from_fuzzy(&delta_chop(&t, width), g.vertex_count())
            } else {
                let (t, hd) = decompose(&g, root).map_err(map_hammock_err)?;
                let mut sc = scattering_chop(&g, &t, &hd, width)
                    .map_err(|e| Failure::invariant(e.to_string()))?;
                let metric = Metric::new(&g);
                let stats = max_cut_count(&g, &t, &metric, &sc.chop, width);
                sc.tau_observed = Some(stats.max_cuts);
                let fuzzy_report = verify_fuzzy(&sc.chop);
                if !fuzzy_report.passed() {
                    return Err(Failure::invariant(format!(
                        "chop violates its fuzz band at {} vertices",
                        fuzzy_report.violations.len()
                    )));
                }
                ChopJson::from_scattering(&sc, g.vertex_count())
            };
            emit(&output, &to_pretty(&chop_json))
        }

        Command::Partition { r#in, delta, levels, output } => {
            let input = r#in
                .or_else(|| cfg_path(&cfg, "in"))
                .ok_or_else(|| Failure::usage("--in FILE is required"))?;
            let delta = delta
                .or_else(|| cfg_u64(&cfg, "delta"))
                .ok_or_else(|| Failure::usage("--delta is required"))?;
            if delta == 0 {
                return Err(Failure::usage("--delta must be positive"));
            }
            if let Some(l) = levels {
                if l != hammock_core::scattering::PARTITION_LEVELS {
                    return Err(Failure::usage(format!(
                        "--levels is fixed to {} for this construction",
                        hammock_core::scattering::PARTITION_LEVELS
                    )));
                }
            }
            let (g, _) = read_graph_file(&input)?;
            let p = scattering_partition(&g, delta).map_err(|e| match e {
                ScatterError::NotSeriesParallel(cc) => Failure::not_sp(&cc),
                ScatterError::NotUnitWeight | ScatterError::Disconnected { .. } => {
                    Failure::usage(e.to_string())
                }
                other => Failure::invariant(other.to_string()),
            })?;
            emit(&output, &to_pretty(&PartitionJson::from_partition(&p)))
        }

        Command::Spr { r#in, terminals, terminal_count, seed, output } => {
            let input = r#in
                .or_else(|| cfg_path(&cfg, "in"))
                .ok_or_else(|| Failure::usage("--in FILE is required"))?;
            let (g0, gj) = read_graph_file(&input)?;
            let terminals: Vec<usize> = if let Some(list) = terminals {
                list.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| Failure::usage(format!("--terminals: {e}")))?
            } else if let Some(ts) = gj.terminals.clone() {
                ts
            } else if let Some(k) = terminal_count.or_else(|| cfg_usize(&cfg, "terminal-count")) {
                let seed = seed
                    .or_else(|| cfg_u64(&cfg, "seed"))
                    .ok_or_else(|| Failure::usage("--seed is required with --terminal-count"))?;
                pick_terminals(g0.vertex_count(), k, seed)
            } else {
                return Err(Failure::usage(
                    "supply --terminals, a terminal list in the graph file, or --terminal-count",
                ));
            };
            // Weighted inputs are expanded to unit weights first; original
            // vertex ids (and so terminal ids) are preserved.
            let g = if g0.is_unit_weight() {
                g0
            } else {
                let (expanded, _) = g0
                    .expand_unit_weights()
                    .map_err(|e| Failure::usage(e.to_string()))?;
                expanded
            };
            let inst = SprInstance::new(g.clone(), &terminals)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let minor = voronoi_spr_minor(&inst);
            let report = verify_minor(&g, &minor);
            if !report.passed() {
                return Err(Failure::invariant(format!(
                    "minor failed verification: {}",
                    report
                        .violations
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("; ")
                )));
            }
            let d = distortion(&g, &minor);
            emit(&output, &to_pretty(&SprResultJson::from_result(&minor, &d)))
        }

        Command::Ears { r#in, output } => {
            let input = r#in
                .or_else(|| cfg_path(&cfg, "in"))
                .ok_or_else(|| Failure::usage("--in FILE is required"))?;
            let (g, _) = read_graph_file(&input)?;
            if !g.is_biconnected() || g.vertex_count() < 3 {
                return Err(Failure::usage("input is not 2-vertex-connected"));
            }
            let (t, hd) = decompose(&g, 0).map_err(map_hammock_err)?;
            let ed = nested_ears_with(&g, &t, &hd).map_err(|e| match e {
                EarError::Pipeline(he) => map_hammock_err(he),
                other => Failure::invariant(other.to_string()),
            })?;
            let report = verify_ears(&g, &t, &hd, &ed);
            if !report.passed() {
                return Err(Failure::invariant(format!(
                    "ear decomposition failed verification: {}",
                    report
                        .violations
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("; ")
                )));
            }
            let ears_json = EarsJson {
                ears: ed
                    .ears
                    .iter()
                    .map(|e| {
                        let (u, v) = g.edge(e.cross_edge).endpoints();
                        EarJson { verts: e.verts.clone(), cross: (u, v), hammock: e.hammock }
                    })
                    .collect(),
            };
            emit(&output, &to_pretty(&ears_json))
        }

        Command::Verify { kind, graph, inputs, budget_tau, output } => {
            let kind = kind
                .or_else(|| cfg.get("kind").and_then(Value::as_str).map(str::to_string))
                .ok_or_else(|| Failure::usage("--kind is required"))?;
            if inputs.is_empty() {
                return Err(Failure::usage("at least one --in FILE is required"));
            }
            let graph = graph.or_else(|| cfg_path(&cfg, "graph"));
            let reports = run_verify_batch(&kind, &graph, &inputs, budget_tau)?;
            let text = if reports.len() == 1 {
                to_pretty(&reports[0])
            } else {
                to_pretty(&reports)
            };
            emit(&output, &text)?;
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::invariant(format!(
                    "{} of {} inputs failed verification",
                    reports.iter().filter(|r| !r.passed).count(),
                    reports.len()
                )))
            }
        }
    }
}

fn pick_terminals(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut state = seed | 1;
    for i in (1..n).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        order.swap(i, (state as usize) % (i + 1));
    }
    order.truncate(k.clamp(1, n));
    order.sort_unstable();
    order
}

fn batch_threads() -> usize {
    std::env::var("SPR_SPARSIFY_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(4)
}

fn run_verify_batch(
    kind: &str,
    graph: &Option<PathBuf>,
    inputs: &[PathBuf],
    budget_tau: Option<usize>,
) -> Result<Vec<ReportJson>, Failure> {
    let threads = batch_threads().min(inputs.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let collected: std::sync::Mutex<Vec<(usize, ReportJson)>> =
        std::sync::Mutex::new(Vec::with_capacity(inputs.len()));
    let kind_owned = kind.to_string();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..threads {
            let next = &next;
            let collected = &collected;
            let kind = &kind_owned;
            handles.push(scope.spawn(move || loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= inputs.len() {
                    break;
                }
                let report = verify_one(kind, graph, &inputs[i], budget_tau);
                collected.lock().unwrap().push((i, report));
            }));
        }
        for h in handles {
            let _ = h.join();
        }
    });
    let mut indexed = collected.into_inner().unwrap();
    indexed.sort_by_key(|(i, _)| *i);
    Ok(indexed.into_iter().map(|(_, r)| r).collect())
}

fn fail_report(kind: &str, input: &Path, msg: String) -> ReportJson {
    ReportJson {
        kind: kind.to_string(),
        input: input.display().to_string(),
        passed: false,
        violations: vec![msg],
        metrics: BTreeMap::new(),
    }
}

fn verify_one(
    kind: &str,
    graph: &Option<PathBuf>,
    input: &Path,
    budget_tau: Option<usize>,
) -> ReportJson {
    let mut metrics: BTreeMap<String, Value> = BTreeMap::new();
    let need_graph = || -> Result<WeightedGraph, String> {
        let path = graph
            .as_ref()
            .ok_or_else(|| "--graph FILE is required for this kind".to_string())?;
        let (g, _) = read_graph_file(path).map_err(|f| f.message)?;
        Ok(g)
    };
    let outcome: Result<Vec<String>, String> = (|| match kind {
        "graph" => {
            let (g, gj) = read_graph_file(input).map_err(|f| f.message)?;
            metrics.insert("n".into(), Value::from(g.vertex_count()));
            metrics.insert("m".into(), Value::from(g.edge_count()));
            metrics.insert("connected".into(), Value::from(g.is_connected()));
            metrics.insert(
                "seriesParallel".into(),
                Value::from(
                    hammock_core::recognize::is_series_parallel(&g).is_series_parallel(),
                ),
            );
            if let Some(r) = gj.root {
                if r >= g.vertex_count() {
                    return Ok(vec![format!("root {r} out of range")]);
                }
            }
            Ok(Vec::new())
        }
        "decomposition" => {
            let g = need_graph()?;
            let dj: DecompositionJson = read_json(input).map_err(|f| f.message)?;
            let hd = dj.to_decomposition(&g)?;
            let t = RootedBfsTree::build(&g, 0).map_err(|e| e.to_string())?;
            let metric = Metric::new(&g);
            let report = verify_decomposition(&g, &t, &metric, &hd);
            metrics.insert("hammocks".into(), Value::from(hd.forest.hammocks.len()));
            Ok(report.violations.iter().map(|v| v.to_string()).collect())
        }
        "chop" => {
            let g = need_graph()?;
            let cj: ChopJson = read_json(input).map_err(|f| f.message)?;
            let chop = cj.to_fuzzy(&g)?;
            let report = verify_fuzzy(&chop);
            let mut violations: Vec<String> = report
                .violations
                .iter()
                .map(|v| format!("vertex {} in annulus {} at distance {}", v.vertex, v.annulus, v.dist))
                .collect();
            let t = RootedBfsTree::build(&g, chop.root).map_err(|e| e.to_string())?;
            let metric = Metric::new(&g);
            let stats = max_cut_count(&g, &t, &metric, &chop, chop.delta);
            metrics.insert("maxCuts".into(), Value::from(stats.max_cuts));
            let budget = budget_tau.unwrap_or(CHOP_CUT_LIMIT);
            if !cj.moves.is_empty() && stats.max_cuts > budget {
                violations.push(format!(
                    "a shortest path of length <= delta is cut {} times (budget {budget})",
                    stats.max_cuts
                ));
            }
            Ok(violations)
        }
        "partition" => {
            let g = need_graph()?;
            let pj: PartitionJson = read_json(input).map_err(|f| f.message)?;
            let metric = Metric::new(&g);
            let budget = budget_tau.unwrap_or(pj.tau_budget);
            let mut covered = vec![false; g.vertex_count()];
            for p in &pj.parts {
                for &v in p {
                    if v >= g.vertex_count() || covered[v] {
                        return Ok(vec![format!("parts do not partition the vertex set")]);
                    }
                    covered[v] = true;
                }
            }
            if covered.iter().any(|c| !c) {
                return Ok(vec!["parts do not cover the vertex set".to_string()]);
            }
            let report = verify_scattering(&g, &metric, &pj.parts, pj.delta, budget);
            metrics.insert("tauObserved".into(), Value::from(report.tau_observed));
            let mut violations = Vec::new();
            for &i in &report.disconnected_parts {
                violations.push(format!("connected: part {i} is not connected"));
            }
            for &(i, d) in &report.diameter_violations {
                violations.push(format!(
                    "low weak diameter: part {i} has weak diameter {d} > {}",
                    pj.delta
                ));
            }
            if report.tau_observed > budget {
                violations.push(format!(
                    "scattering: a shortest path of length <= {} meets {} parts (budget {budget})",
                    pj.delta, report.tau_observed
                ));
            }
            Ok(violations)
        }
        "spr" => {
            let g = need_graph()?;
            let sj: SprResultJson = read_json(input).map_err(|f| f.message)?;
            let minor = sj.to_minor()?;
            let report = verify_minor(&g, &minor);
            let d = distortion(&g, &minor);
            metrics.insert("distortion".into(), Value::from(d.ratio()));
            Ok(report.violations.iter().map(|v| v.to_string()).collect())
        }
        "ears" => {
            let g = need_graph()?;
            let ej: EarsJson = read_json(input).map_err(|f| f.message)?;
            let (t, hd) = decompose(&g, 0).map_err(|e| e.to_string())?;
            let mut ears = Vec::new();
            for e in &ej.ears {
                let cross = g
                    .edge_id(e.cross.0, e.cross.1)
                    .ok_or_else(|| format!("cross edge {:?} not in graph", e.cross))?;
                ears.push(Ear { verts: e.verts.clone(), cross_edge: cross, hammock: e.hammock });
            }
            let ed = EarDecomposition { ears };
            let report = verify_ears(&g, &t, &hd, &ed);
            metrics.insert("ears".into(), Value::from(ej.ears.len()));
            Ok(report.violations.iter().map(|v| v.to_string()).collect())
        }
        other => Err(format!("unknown kind {other}")),
    })();
    match outcome {
        Ok(violations) => ReportJson {
            kind: kind.to_string(),
            input: input.display().to_string(),
            passed: violations.is_empty(),
            violations,
            metrics,
        },
        Err(msg) => fail_report(kind, input, msg),
    }
}
