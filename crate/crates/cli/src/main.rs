use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mcst_core::cliquewidth::parse_expression;
use mcst_core::compare::{run_suite, CompareConfig, Suite};
use mcst_core::graph::{has_covered_spanning_tree, is_vertex_cover, Graph, SpanningTree, VertexSet};
use mcst_core::interval::random_interval_graph;
use mcst_core::io;
use mcst_core::oracle::{tau_star, DEFAULT_ORACLE_BOUND};
use mcst_core::pipeline::{solve, Algorithm, SolveOptions};
use mcst_core::reduction::{build_sat_instance, check_assignment, expand_to_unit_disk, normalize_pure};
use mcst_core::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;

/// Minimum cover spanning tree toolkit.
#[derive(Parser)]
#[command(name = "mcst", version)]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest instance handed to the exhaustive oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimum cover and a spanning tree it covers.
    Solve(SolveArgs),
    /// Emit instance files from a construction.
    #[command(subcommand)]
    Generate(Generate),
    /// Check a cover (and optionally a tree) against a graph.
    Verify(VerifyArgs),
    /// Run a solver-versus-oracle battery.
    OracleCompare(CompareArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Report whether the optimum is at most K.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "auto")]
    algorithm: Algorithm,
    /// Interval ordering file.
    #[arg(long)]
    order: Option<PathBuf>,
    /// Expression file; vertex names must be the graph's 1-based ids.
    #[arg(long)]
    expr: Option<PathBuf>,
    /// Minimum dominating set file.
    #[arg(long)]
    domset: Option<PathBuf>,
    /// Re-check the cover and tree, and run sweep invariants.
    #[arg(long)]
    verify: bool,
    /// Write PREFIX.cover and PREFIX.tree.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Generate {
    /// Gadget graph for a CNF formula, with k = 3n - 1.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
        /// Remove pure variables first.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Triangle-chain expansion of a grid-embedded graph.
    Unitdisk {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coords: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random connected interval graph with its ordering.
    IntervalRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4.0)]
        avg_degree: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn ids(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn id_list(s: &VertexSet) -> String {
    let v: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
    if v.is_empty() {
        "(empty)".into()
    } else {
        v.join(" ")
    }
}

fn tree_edges(t: &SpanningTree) -> Vec<[usize; 2]> {
    t.edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect()
}

/// Printed output plus the exit status it implies.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

fn cmd_solve(a: &SolveArgs, oracle_bound: usize) -> Result<Outcome> {
    let g = io::parse_graph(&read(&a.graph)?)?;
    let mut opts = SolveOptions {
        k: a.k,
        verify: a.verify,
        oracle_bound,
        ..SolveOptions::new()
    };
    if let Some(p) = &a.order {
        opts.order = Some(io::parse_ordering(&read(p)?, g.n())?);
    }
    if let Some(p) = &a.expr {
        opts.expr = Some(parse_expression(&read(p)?)?);
    }
    if let Some(p) = &a.domset {
        opts.domset = Some(io::parse_vertex_set(&read(p)?, g.n())?);
    }
    let r = solve(&g, a.algorithm, &opts)?;
    if let Some(prefix) = &a.out {
        write(&with_ext(prefix, "cover"), &io::serialize_vertex_set(&r.cover))?;
        write(&with_ext(prefix, "tree"), &io::serialize_tree(&r.tree, g.n()))?;
    }
    let mut text = format!("algorithm: {}\nvalue: {}\n", r.algorithm, r.value);
    if let (Some(k), Some(yes)) = (r.k, r.yes) {
        text += &format!("answer: {} (k = {k})\n", if yes { "yes" } else { "no" });
    }
    text += &format!("cover: {}\n", id_list(&r.cover));
    let edges: Vec<String> = r.tree.edges.iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    text += &format!("tree: {}\n", edges.join(" "));
    for t in &r.timings {
        text += &format!("time {}: {:.6}s\n", t.phase, t.seconds);
    }
    if let Some(ok) = r.verified {
        text += &format!("verified: {}\n", if ok { "ok" } else { "FAILED" });
    }
    let json = json!({
        "algorithm": r.algorithm,
        "value": r.value,
        "k": r.k,
        "answer": r.yes.map(|y| if y { "yes" } else { "no" }),
        "cover": ids(&r.cover),
        "tree": tree_edges(&r.tree),
        "timings": r.timings,
        "verified": r.verified,
    });
    let code = if r.verified == Some(false) { EXIT_VERIFY_FAILED } else { 0 };
    Ok(Outcome { text, json, code })
}

/// Oracle value when the instance is within the bound, else "unknown".
fn truth_value(g: &Graph, bound: usize) -> Result<Value> {
    if g.n() > bound {
        return Ok(json!("unknown"));
    }
    Ok(json!(tau_star(g, bound)?.value))
}

fn decision(tau: &Value, k: usize) -> Value {
    match tau.as_u64() {
        Some(t) => json!(if t as usize <= k { "yes" } else { "no" }),
        None => json!("unknown"),
    }
}

fn cmd_generate(cmd: &Generate, oracle_bound: usize) -> Result<Outcome> {
    let (graph_path, truth_path, summary) = match cmd {
        Generate::Sat { cnf, normalize, out } => {
            let mut c = io::parse_dimacs_cnf(&read(cnf)?)?;
            if *normalize {
                c = normalize_pure(&c).cnf;
            }
            let gi = build_sat_instance(&c)?;
            let tau = truth_value(&gi.graph, oracle_bound)?;
            let satisfiable = (c.n_vars <= 20).then(|| {
                (0u64..1 << c.n_vars).any(|m| {
                    let a: Vec<bool> = (0..c.n_vars).map(|v| m >> v & 1 == 1).collect();
                    check_assignment(&c, &a).is_ok()
                })
            });
            let roles: Vec<Value> = gi
                .roles
                .iter()
                .enumerate()
                .map(|(v, r)| json!({"vertex": v + 1, "role": r.to_string()}))
                .collect();
            let truth = json!({
                "n": gi.graph.n(),
                "m": gi.graph.m(),
                "k": gi.k,
                "tau_star": tau,
                "decision": decision(&tau, gi.k),
                "satisfiable": satisfiable,
                "roles": roles,
            });
            write(&with_ext(out, "graph"), &io::serialize_graph(&gi.graph))?;
            (with_ext(out, "graph"), with_ext(out, "truth.json"), truth)
        }
        Generate::Unitdisk { graph, coords, k, out } => {
            let g = io::parse_graph(&read(graph)?)?;
            let emb = io::parse_coords(&read(coords)?, g.n())?;
            let ex = expand_to_unit_disk(&g, &emb, *k)?;
            let tau = truth_value(&ex.graph, oracle_bound)?;
            let chains: Vec<Value> = ex
                .chain_map
                .iter()
                .map(|c| {
                    let triples: Vec<[usize; 3]> = c.triples.iter().map(|t| t.map(|v| v + 1)).collect();
                    json!({"edge": [c.u + 1, c.v + 1], "triples": triples})
                })
                .collect();
            let truth = json!({
                "n": ex.graph.n(),
                "m": ex.graph.m(),
                "k_prime": ex.k_prime,
                "tau_star": tau,
                "decision": decision(&tau, ex.k_prime),
                "chains": chains,
            });
            write(&with_ext(out, "graph"), &io::serialize_graph(&ex.graph))?;
            (with_ext(out, "graph"), with_ext(out, "truth.json"), truth)
        }
        Generate::IntervalRandom {
            n,
            seed,
            avg_degree,
            out,
        } => {
            if *n == 0 {
                return Err(Error::Precondition("n must be positive".into()).into());
            }
            let (g, ord) = random_interval_graph(*n, *avg_degree, *seed);
            let tau = truth_value(&g, oracle_bound)?;
            write(&with_ext(out, "graph"), &io::serialize_graph(&g))?;
            write(&with_ext(out, "order"), &io::serialize_ordering(ord.order()))?;
            let truth = json!({"n": g.n(), "m": g.m(), "seed": seed, "tau_star": tau});
            (with_ext(out, "graph"), with_ext(out, "truth.json"), truth)
        }
    };
    write(&truth_path, &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    let mut text = format!("wrote {}\n", graph_path.display());
    if let Some(obj) = summary.as_object() {
        for key in ["n", "m", "k", "k_prime", "tau_star", "decision", "satisfiable"] {
            if let Some(v) = obj.get(key) {
                text += &format!("{key}: {v}\n");
            }
        }
    }
    Ok(Outcome {
        text,
        json: summary,
        code: 0,
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let g = io::parse_graph(&read(&a.graph)?)?;
    let cover = io::parse_vertex_set(&read(&a.cover)?, g.n())?;
    let mut problems = Vec::new();
    if !g.is_connected() {
        problems.push("graph is disconnected".to_string());
    } else if !has_covered_spanning_tree(&g, &cover) {
        problems.push("boundary subgraph of the cover is disconnected".to_string());
    }
    if let Some(p) = &a.tree {
        let t = io::parse_tree(&read(p)?, g.n())?;
        if !t.is_spanning_tree_of(&g) {
            problems.push("tree is not a spanning tree of the graph".to_string());
        }
        if !is_vertex_cover(&t.edges, &cover) {
            problems.push("cover misses a tree edge".to_string());
        }
    }
    let ok = problems.is_empty();
    let mut text = format!("{}\n", if ok { "ok" } else { "FAIL" });
    for p in &problems {
        text += &format!("  {p}\n");
    }
    Ok(Outcome {
        text,
        json: json!({"ok": ok, "cover_size": cover.len(), "problems": problems}),
        code: if ok { 0 } else { EXIT_VERIFY_FAILED },
    })
}

fn cmd_compare(a: &CompareArgs, oracle_bound: usize) -> Result<Outcome> {
    if a.max_n == 0 || a.max_n > oracle_bound {
        return Err(Error::InstanceTooLarge {
            n: a.max_n,
            bound: oracle_bound,
        }
        .into());
    }
    let r = run_suite(
        a.suite,
        &CompareConfig {
            count: a.count,
            max_n: a.max_n,
            seed: a.seed,
            oracle_bound,
        },
    )?;
    let mut text = format!(
        "suite {}: {} instances, {} checks, {} mismatches, {:.3}s\n",
        r.suite,
        r.instances,
        r.checks,
        r.mismatches.len(),
        r.seconds
    );
    for m in &r.mismatches {
        text += &format!("mismatch at instance {} (seed {}): {}\n{}", m.instance, m.seed, m.detail, m.dump);
    }
    let code = if r.mismatches.is_empty() { 0 } else { EXIT_VERIFY_FAILED };
    Ok(Outcome {
        text,
        json: serde_json::to_value(&r)?,
        code,
    })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InstanceTooLarge { .. } | Error::TableBlowup { .. }) => EXIT_TOO_LARGE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, cli.oracle_bound),
        Command::Generate(g) => cmd_generate(g, cli.oracle_bound),
        Command::Verify(a) => cmd_verify(a),
        Command::OracleCompare(a) => cmd_compare(a, cli.oracle_bound),
    };
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
