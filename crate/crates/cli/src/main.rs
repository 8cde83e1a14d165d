//! Command-line front end: model parsing, graph construction, solving,
//! exhaustive verification, and machine-readable exports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{debug, info};

use cutsets_core::an::{parse_network, AutomataNetwork, Context, LocalState};
use cutsets_core::glc::{build_glc, export_dot, Glc};
use cutsets_core::oracle::{
    enumerate_cut_nsets, is_cut_set, reachable_with_trace, synthetic_glc, BudgetExceeded,
    ExplorationBudget, SyntheticGlcSpec,
};
use cutsets_core::solver::{chain_cut_sets, solve, SolveOptions, SolveStats};

const EXIT_PARSE: u8 = 1;
const EXIT_TARGET: u8 = 2;
const EXIT_NOT_CUT: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "cutsets", version, about = "Cut N-set analysis for automata networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute cut N-sets for the given targets.
    Cutsets(CutsetsArgs),
    /// Build the causality graph and report its shape.
    Glc(GlcArgs),
    /// Check one candidate cut set by exhaustive exploration.
    Verify(VerifyArgs),
    /// Enumerate the complete minimal cut family and diff it against the
    /// analysis.
    Oracle(OracleArgs),
    /// Solve a synthetic benchmark instance and report timings.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Path to the model file.
    model: PathBuf,
    /// Target local state, as `name=state`. Repeatable.
    #[arg(long = "target", required = true)]
    targets: Vec<String>,
}

#[derive(Args)]
struct CutsetsArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Cardinality bound N.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Observable local states: `all`, or a path to a file with one
    /// `name=state` per line.
    #[arg(long, default_value = "all")]
    obs: String,
    /// Write the machine-readable report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the graph in DOT format to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Rounds of posterior chaining; chained sets may exceed N and are
    /// reported separately.
    #[arg(long, default_value_t = 0)]
    chain: usize,
}

#[derive(Args)]
struct GlcArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Members of the candidate cut set, as `name=state`.
    #[arg(required = true)]
    members: Vec<String>,
    /// Exploration budget in global states.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Automata in the synthetic instance.
    #[arg(long, default_value_t = 300)]
    automata: usize,
    /// States per automaton.
    #[arg(long, default_value_t = 10)]
    states: u32,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<BudgetExceeded> for Failure {
    fn from(e: BudgetExceeded) -> Failure {
        Failure::new(EXIT_BUDGET, e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("CUTSETS_LOG", "error"),
    )
    .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cutsets(args) => cmd_cutsets(args),
        Command::Glc(args) => cmd_glc(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_model(path: &Path) -> Result<(AutomataNetwork, Context), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let parsed = parse_network(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}:{e}", path.display())))?;
    info!(
        "loaded {}: {} automata, {} labels",
        path.display(),
        parsed.0.automaton_count(),
        parsed.0.labels().len()
    );
    Ok(parsed)
}

fn resolve_targets(
    net: &AutomataNetwork,
    targets: &[String],
) -> Result<Vec<LocalState>, Failure> {
    let mut out = Vec::new();
    for t in targets {
        let ls = net
            .lookup_local_state(t)
            .ok_or_else(|| Failure::new(EXIT_TARGET, format!("invalid target `{t}`")))?;
        if !out.contains(&ls) {
            out.push(ls);
        }
    }
    Ok(out)
}

fn resolve_obs(
    net: &AutomataNetwork,
    selector: &str,
) -> Result<Option<Vec<LocalState>>, Failure> {
    if selector == "all" {
        return Ok(None);
    }
    let text = std::fs::read_to_string(selector)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{selector}: {e}")))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ls = net.lookup_local_state(line).ok_or_else(|| {
            Failure::new(EXIT_TARGET, format!("{selector}: invalid local state `{line}`"))
        })?;
        out.push(ls);
    }
    Ok(Some(out))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Sorted by cardinality, then lexicographically in the element order.
fn sort_family(family: &mut [Vec<LocalState>]) {
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

fn render_set(net: &AutomataNetwork, set: &[LocalState]) -> String {
    let names: Vec<String> = set.iter().map(|&l| net.display_local_state(l)).collect();
    format!("{{{}}}", names.join(","))
}

fn glc_json(g: &Glc) -> serde_json::Value {
    serde_json::json!({
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "sccs": g.scc_count(),
    })
}

fn stats_json(stats: &SolveStats) -> serde_json::Value {
    // Deliberately no wall time: output must be byte-identical across runs.
    serde_json::json!({
        "updates": stats.updates,
        "changes": stats.changes,
    })
}

fn family_json(net: &AutomataNetwork, family: &[Vec<LocalState>]) -> serde_json::Value {
    let sets: Vec<Vec<String>> = family
        .iter()
        .map(|s| s.iter().map(|&l| net.display_local_state(l)).collect())
        .collect();
    serde_json::json!(sets)
}

fn counts_by_cardinality(family: &[Vec<LocalState>]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for set in family {
        *counts.entry(set.len().to_string()).or_insert(0) += 1;
    }
    counts
}

fn cmd_cutsets(args: CutsetsArgs) -> Result<String, Failure> {
    let (net, ctx) = load_model(&args.model.model)?;
    if args.n < 1 {
        return Err(Failure::new(EXIT_TARGET, "--n must be at least 1"));
    }
    let targets = resolve_targets(&net, &args.model.targets)?;
    let observables = resolve_obs(&net, &args.obs)?;
    let g = build_glc(&net, &ctx, &targets);
    debug!("graph: {} nodes, {} edges", g.node_count(), g.edge_count());
    let options = SolveOptions {
        bound: args.n,
        observables,
        ..SolveOptions::new(args.n)
    };
    let (valuation, stats) = solve(&net, &g, &options);

    let mut report = String::new();
    let mut targets_json = serde_json::Map::new();
    for &target in &targets {
        let name = net.display_local_state(target);
        let mut family = valuation.cut_sets(&net, &g, target);
        sort_family(&mut family);
        report.push_str(&format!("target {name}: {} cut set(s)\n", family.len()));
        for set in &family {
            report.push_str(&format!("  {}\n", render_set(&net, set)));
        }
        let counts = counts_by_cardinality(&family);
        for (card, count) in &counts {
            report.push_str(&format!("  |{card}|-sets: {count}\n"));
        }
        let mut entry = serde_json::Map::new();
        entry.insert("cutsets".into(), family_json(&net, &family));
        entry.insert("counts".into(), serde_json::json!(counts));
        if args.chain > 0 {
            let mut chained = chain_cut_sets(&net, &g, &valuation, &family, args.chain);
            sort_family(&mut chained);
            report.push_str(&format!("  chained ({} round(s)):\n", args.chain));
            for set in &chained {
                report.push_str(&format!("    {}\n", render_set(&net, set)));
            }
            entry.insert("chained".into(), family_json(&net, &chained));
        }
        targets_json.insert(name, serde_json::Value::Object(entry));
    }
    report.push_str(&format!(
        "graph: {} nodes, {} edges, {} sccs; {} updates in {:?}\n",
        g.node_count(),
        g.edge_count(),
        g.scc_count(),
        stats.updates,
        stats.wall,
    ));

    if let Some(path) = &args.dot {
        write_file(path, &export_dot(&net, &g))?;
    }
    if let Some(path) = &args.json {
        let doc = serde_json::json!({
            "targets": targets_json,
            "glc": glc_json(&g),
            "stats": stats_json(&stats),
        });
        let mut body = serde_json::to_string_pretty(&doc).expect("report serializes");
        body.push('\n');
        write_file(path, &body)?;
    }
    Ok(report)
}

fn cmd_glc(args: GlcArgs) -> Result<String, Failure> {
    let (net, ctx) = load_model(&args.model.model)?;
    let targets = resolve_targets(&net, &args.model.targets)?;
    let g = build_glc(&net, &ctx, &targets);
    let report = format!(
        "graph: {} nodes, {} edges, {} sccs\n",
        g.node_count(),
        g.edge_count(),
        g.scc_count(),
    );
    if let Some(path) = &args.dot {
        write_file(path, &export_dot(&net, &g))?;
    }
    if let Some(path) = &args.json {
        let doc = serde_json::json!({ "glc": glc_json(&g) });
        let mut body = serde_json::to_string_pretty(&doc).expect("report serializes");
        body.push('\n');
        write_file(path, &body)?;
    }
    Ok(report)
}

fn cmd_verify(args: VerifyArgs) -> Result<String, Failure> {
    let (net, ctx) = load_model(&args.model.model)?;
    let targets = resolve_targets(&net, &args.model.targets)?;
    let members = resolve_targets(&net, &args.members)?;
    let budget = ExplorationBudget { max_states: args.budget };
    let mut report = String::new();
    let mut all_cut = true;
    for &target in &targets {
        let name = net.display_local_state(target);
        if is_cut_set(&net, &ctx, target, &members, budget)? {
            report.push_str(&format!("{name}: CUT by {}\n", render_set(&net, &members)));
        } else {
            all_cut = false;
            report.push_str(&format!(
                "{name}: NOT-CUT by {}\n",
                render_set(&net, &members)
            ));
            let disabled = net
                .disable(&members)
                .map_err(|e| Failure::new(EXIT_TARGET, e.to_string()))?;
            let (witness_net, trace) = if members.contains(&target) {
                (&net, reachable_with_trace(&net, &ctx, target, budget)?)
            } else {
                (&disabled, reachable_with_trace(&disabled, &ctx, target, budget)?)
            };
            if let Some(labels) = trace {
                let names: Vec<&str> = labels
                    .iter()
                    .map(|&l| witness_net.labels()[l].name.as_str())
                    .collect();
                report.push_str(&format!("  witness: [{}]\n", names.join(",")));
            }
        }
    }
    if all_cut {
        Ok(report)
    } else {
        // The full report moves to the diagnostic stream on failure.
        Err(Failure::new(EXIT_NOT_CUT, report.trim_end().to_string()))
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<String, Failure> {
    let (net, ctx) = load_model(&args.model.model)?;
    let targets = resolve_targets(&net, &args.model.targets)?;
    let budget = ExplorationBudget { max_states: args.budget };
    let obs: Vec<LocalState> = net.local_states().collect();
    let g = build_glc(&net, &ctx, &targets);
    let (valuation, _) = solve(&net, &g, &SolveOptions::new(args.n.max(1)));
    let mut report = String::new();
    for &target in &targets {
        let name = net.display_local_state(target);
        let mut complete = enumerate_cut_nsets(&net, &ctx, target, &obs, args.n, budget)?;
        sort_family(&mut complete);
        let mut from_solver = valuation.cut_sets(&net, &g, target);
        sort_family(&mut from_solver);
        report.push_str(&format!("target {name}\n"));
        report.push_str(&format!("  complete ({}):\n", complete.len()));
        for set in &complete {
            report.push_str(&format!("    {}\n", render_set(&net, set)));
        }
        report.push_str("  diff:\n");
        for set in &complete {
            let tag = if from_solver.contains(set) { "both" } else { "oracle-only" };
            report.push_str(&format!("    {} {}\n", render_set(&net, set), tag));
        }
        for set in &from_solver {
            if !complete.contains(set) {
                report.push_str(&format!("    {} solver-only\n", render_set(&net, set)));
            }
        }
    }
    Ok(report)
}

fn cmd_bench(args: BenchArgs) -> Result<String, Failure> {
    let spec = SyntheticGlcSpec {
        automata: args.automata,
        states_per_automaton: args.states,
        objectives_per_state: 2,
        solutions_per_objective: 2,
        max_locals_per_solution: 3,
        seed: args.seed,
    };
    let (net, _, g) = synthetic_glc(spec);
    let start = std::time::Instant::now();
    let (_, stats) = solve(&net, &g, &SolveOptions::new(args.n.max(1)));
    Ok(format!(
        "bench: {} nodes, {} edges; N={}; {} updates in {:?} (total {:?})\n",
        g.node_count(),
        g.edge_count(),
        args.n.max(1),
        stats.updates,
        stats.wall,
        start.elapsed(),
    ))
}
