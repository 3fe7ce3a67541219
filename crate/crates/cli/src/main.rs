//! Batch front end: parse instances, dispatch solvers, kernelize, recognize
//! graph classes, compare against the oracle, generate corpora.
//!
//! One invocation emits exactly one JSON object on stdout; the human
//! summary goes to stderr. Exit codes: 0 solved (a "no" verdict is still 0),
//! 2 parse/usage error, 3 resource limit.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use stc_core::gallai;
use stc_core::generate::{self, CorpusSpec};
use stc_core::graph::Graph;
use stc_core::instance::{self, ProblemKind};
use stc_core::kernel::{self, Rule2Outcome};
use stc_core::labeling::{self, DeletionSet, Labeling};
use stc_core::oracle::{self, OracleBudget};
use stc_core::patterns::{Pattern, PatternTester};
use stc_core::result::SolveResult;
use stc_core::solvers_ell::{self, EllSolveError};
use stc_core::solvers_k;
use stc_core::special::{self, SolverTag};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "stc", version, about = "Exact STC / Cluster Deletion solver suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly (--k, --ell, or --optimal)
    Solve {
        /// stc or cd
        problem: ProblemKind,
        /// Instance file ("-" for stdin)
        input: PathBuf,
        /// Weak-edge / deletion budget k
        #[arg(long)]
        k: Option<usize>,
        /// Strong-/cluster-edge target ell
        #[arg(long)]
        ell: Option<usize>,
        /// Find the optimum objective
        #[arg(long)]
        optimal: bool,
        /// Skip the kernelization preprocessing
        #[arg(long)]
        no_kernel: bool,
        /// Record the kernelization trace in the output
        #[arg(long)]
        trace: bool,
        /// Route through the polynomial special-case solvers first
        #[arg(long)]
        auto: bool,
    },
    /// Apply the kernelization rules and emit the reduced instance
    Kernelize {
        /// stc (the kernel rules are STC rules)
        problem: ProblemKind,
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        /// Write the reduced instance file here (also inlined in the JSON)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report, for every catalog pattern, freeness or a witness
    Recognize { input: PathBuf },
    /// Run both brute-force oracles and report the correspondence verdict
    Compare { input: PathBuf },
    /// Write instance files for a family (gnp, hfree, all-labeled, fig3)
    Generate {
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pattern token for the hfree family
        #[arg(long)]
        pattern: Option<String>,
        /// Problem tag written into the instance headers
        #[arg(long, default_value = "stc")]
        problem: ProblemKind,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-validate a solve result against its instance
    Verify {
        input: PathBuf,
        /// JSON result record as emitted by `solve`
        result: PathBuf,
    },
}

enum CliError {
    Input(String),
    Resource(String),
}

impl CliError {
    fn report(&self) -> (i32, &str) {
        match self {
            CliError::Input(m) => (2, m.as_str()),
            CliError::Resource(m) => (3, m.as_str()),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn load_graph(path: &Path, expect: ProblemKind) -> Result<Graph, CliError> {
    let text = read_input(path)?;
    let inst = instance::parse(&text).map_err(|e| CliError::Input(e.to_string()))?;
    if inst.problem != expect {
        eprintln!(
            "note: file declares problem `{}`, solving `{}` as requested",
            inst.problem, expect
        );
    }
    Ok(inst.graph)
}

fn edge_pairs_1indexed(g: &Graph, edges: impl IntoIterator<Item = usize>) -> Vec<[usize; 2]> {
    edges
        .into_iter()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            [u + 1, v + 1]
        })
        .collect()
}

fn trace_json(g: &Graph, trace: &[kernel::RuleApplication]) -> Value {
    let _ = g;
    Value::Array(
        trace
            .iter()
            .map(|app| {
                json!({
                    "rule": app.rule,
                    "removed": app.removed.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "budget_delta": app.budget_delta,
                })
            })
            .collect(),
    )
}

fn certificate_json(g: &Graph, problem: ProblemKind, res: &SolveResult) -> Value {
    match problem {
        ProblemKind::Stc => match res.labeling() {
            Some(l) => json!({ "strong": edge_pairs_1indexed(g, l.strong.iter().copied()) }),
            None => Value::Null,
        },
        ProblemKind::Cd => match res.deletions() {
            Some(d) => json!({ "deleted": edge_pairs_1indexed(g, d.deleted.iter().copied()) }),
            None => Value::Null,
        },
    }
}

/// Objective counts for the record: (weak, strong) or (deletions, cluster).
fn counts(g: &Graph, problem: ProblemKind, res: &SolveResult) -> Option<(usize, usize)> {
    if !res.feasible {
        return None;
    }
    let m = g.edge_count();
    match problem {
        ProblemKind::Stc => res.labeling().map(|l| (l.weak_count(), l.strong_count())),
        ProblemKind::Cd => res.deletions().map(|d| (d.len(), m - d.len())),
    }
}

struct SolveOutcome {
    res: SolveResult,
    solver: &'static str,
}

fn run_exact(
    g: &Graph,
    problem: ProblemKind,
    mode: &Mode,
    use_kernel: bool,
) -> Result<SolveOutcome, CliError> {
    let ell_err = |e: EllSolveError| CliError::Resource(e.to_string());
    let outcome = match (problem, mode) {
        (ProblemKind::Stc, Mode::K(k)) => SolveOutcome {
            res: gallai::solve_stc_k(g, *k, use_kernel),
            solver: "stc-gallai-vc",
        },
        (ProblemKind::Stc, Mode::Optimal) => SolveOutcome {
            res: gallai::solve_stc_optimal(g, use_kernel),
            solver: "stc-gallai-vc",
        },
        (ProblemKind::Stc, Mode::Ell(l)) => SolveOutcome {
            res: solvers_ell::solve_stc_ell(g, *l).map_err(ell_err)?,
            solver: "stc-ell-dp",
        },
        (ProblemKind::Cd, Mode::K(k)) => SolveOutcome {
            res: solvers_k::solve_cd_k(g, *k),
            solver: "cd-p3-branch",
        },
        (ProblemKind::Cd, Mode::Optimal) => SolveOutcome {
            res: solvers_k::solve_cd_optimal(g),
            solver: "cd-p3-branch",
        },
        (ProblemKind::Cd, Mode::Ell(l)) => SolveOutcome {
            res: solvers_ell::solve_cd_ell(g, *l).map_err(ell_err)?,
            solver: "cd-ell-dp",
        },
    };
    Ok(outcome)
}

enum Mode {
    K(usize),
    Ell(usize),
    Optimal,
}

impl Mode {
    fn parameterization(&self) -> &'static str {
        match self {
            Mode::K(_) => "k",
            Mode::Ell(_) => "ell",
            Mode::Optimal => "optimal",
        }
    }

    fn budget(&self) -> Option<usize> {
        match self {
            Mode::K(b) | Mode::Ell(b) => Some(*b),
            Mode::Optimal => None,
        }
    }
}

fn tag_name(tag: SolverTag) -> &'static str {
    match tag {
        SolverTag::P3Free => "p3-free",
        SolverTag::TriangleFree => "triangle-free",
        SolverTag::Cograph => "cograph",
        SolverTag::PawFree => "paw-free",
        SolverTag::Exponential => "exponential",
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    problem: ProblemKind,
    input: &Path,
    k: Option<usize>,
    ell: Option<usize>,
    optimal: bool,
    no_kernel: bool,
    trace: bool,
    auto: bool,
) -> Result<Value, CliError> {
    let mode = match (k, ell, optimal) {
        (Some(k), None, false) => Mode::K(k),
        (None, Some(l), false) => Mode::Ell(l),
        (None, None, true) => Mode::Optimal,
        _ => {
            return Err(CliError::Input(
                "exactly one of --k, --ell, --optimal is required".into(),
            ))
        }
    };
    let g = load_graph(input, problem)?;
    let m = g.edge_count();

    let mut outcome = None;
    if auto {
        if let Some(res) = special::solve_special(&g) {
            let res = res.expect("dispatch guarantees the precondition");
            let optimum_ell = res.objective; // strong == cluster edges here
            let feasible = match mode {
                Mode::K(k) => m - optimum_ell <= k,
                Mode::Ell(l) => optimum_ell >= l,
                Mode::Optimal => true,
            };
            let solver = tag_name(special::dispatch(&g));
            let res = if feasible {
                // poly certificates are cluster labelings, valid for both
                let res = match problem {
                    ProblemKind::Stc => res,
                    ProblemKind::Cd => SolveResult {
                        certificate: res.labeling().map(|l| {
                            stc_core::result::Certificate::Deletions(DeletionSet::new(
                                l.weak.iter().copied(),
                            ))
                        }),
                        ..res
                    },
                };
                res
            } else {
                SolveResult::infeasible(mode.budget().unwrap_or(0))
            };
            outcome = Some(SolveOutcome { res, solver });
        }
    }
    let outcome = match outcome {
        Some(o) => o,
        None => run_exact(&g, problem, &mode, !no_kernel)?,
    };
    let res = &outcome.res;

    let (weak_like, strong_like) = counts(&g, problem, res).map_or((None, None), |(a, b)| {
        (Some(a), Some(b))
    });
    let objective: Option<usize> = if res.feasible {
        match mode {
            Mode::K(_) | Mode::Optimal => weak_like,
            Mode::Ell(_) => strong_like,
        }
    } else {
        None
    };
    let trace_value = match (trace, &res.kernel_trace) {
        (true, Some(t)) => trace_json(&g, t),
        _ => Value::Null,
    };
    let record = json!({
        "schema_version": SCHEMA_VERSION,
        "problem": problem,
        "parameterization": mode.parameterization(),
        "budget": mode.budget(),
        "verdict": if res.feasible { "yes" } else { "no" },
        "objective": objective,
        "weak_edges": if problem == ProblemKind::Stc { json!(weak_like) } else { Value::Null },
        "strong_edges": if problem == ProblemKind::Stc { json!(strong_like) } else { Value::Null },
        "deletions": if problem == ProblemKind::Cd { json!(weak_like) } else { Value::Null },
        "cluster_edges": if problem == ProblemKind::Cd { json!(strong_like) } else { Value::Null },
        "certificate": certificate_json(&g, problem, res),
        "solver": outcome.solver,
        "kernel_trace": trace_value,
        "nodes": res.stats.nodes,
        "rules_fired": res.stats.rules_fired,
        "time_ms": res.stats.wall.as_secs_f64() * 1e3,
    });
    eprintln!(
        "{} {} on {} vertices / {} edges: {} (objective {:?}, solver {})",
        problem,
        mode.parameterization(),
        g.vertex_count(),
        m,
        if res.feasible { "yes" } else { "no" },
        objective,
        outcome.solver,
    );
    Ok(record)
}

fn cmd_kernelize(
    problem: ProblemKind,
    input: &Path,
    k: Option<usize>,
    ell: Option<usize>,
    out: Option<&Path>,
) -> Result<Value, CliError> {
    if problem != ProblemKind::Stc {
        return Err(CliError::Input(
            "kernelization rules are defined for stc only".into(),
        ));
    }
    let g = load_graph(input, problem)?;
    let record = match (k, ell) {
        (Some(k), None) => {
            let ri = kernel::kernelize_k(&g, k);
            let reduced_text = instance::emit(problem, &ri.graph);
            if let Some(path) = out {
                fs::write(path, &reduced_text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            eprintln!(
                "kernelize --k {k}: {} -> {} vertices, budget {} -> {}, verdict {:?}",
                g.vertex_count(),
                ri.graph.vertex_count(),
                k,
                ri.budget,
                ri.verdict
            );
            json!({
                "schema_version": SCHEMA_VERSION,
                "problem": problem,
                "parameterization": "k",
                "budget_in": k,
                "budget_out": ri.budget,
                "verdict": match ri.verdict {
                    None => "reduced",
                    Some(kernel::NoVerdict::BudgetExhausted) => "no-budget-exhausted",
                    Some(kernel::NoVerdict::SizeBound) => "no-size-bound",
                },
                "vertices": ri.graph.vertex_count(),
                "edges": ri.graph.edge_count(),
                "vertex_map": ri.vertex_map.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "trace": trace_json(&g, &ri.trace),
                "reduced_instance": reduced_text,
                "out": out.map(|p| p.display().to_string()),
            })
        }
        (None, Some(ell)) => match kernel::rule2_apply(&g, ell) {
            Rule2Outcome::ShortCircuitYes { matching } => {
                eprintln!("kernelize --ell {ell}: matching of size {} short-circuits", matching.len());
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "problem": problem,
                    "parameterization": "ell",
                    "budget_in": ell,
                    "verdict": "yes-matching",
                    "matching": edge_pairs_1indexed(&g, matching.edges.iter().copied()),
                    "trace": [],
                })
            }
            Rule2Outcome::Reduced(r) => {
                let ri = &r.instance;
                let reduced_text = instance::emit(problem, &ri.graph);
                if let Some(path) = out {
                    fs::write(path, &reduced_text)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                }
                eprintln!(
                    "kernelize --ell {ell}: {} -> {} vertices",
                    g.vertex_count(),
                    ri.graph.vertex_count()
                );
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "problem": problem,
                    "parameterization": "ell",
                    "budget_in": ell,
                    "budget_out": ri.budget,
                    "verdict": "reduced",
                    "vertices": ri.graph.vertex_count(),
                    "edges": ri.graph.edge_count(),
                    "vertex_map": ri.vertex_map.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "trace": trace_json(&g, &ri.trace),
                    "reduced_instance": reduced_text,
                    "out": out.map(|p| p.display().to_string()),
                })
            }
        },
        _ => {
            return Err(CliError::Input(
                "exactly one of --k, --ell is required".into(),
            ))
        }
    };
    Ok(record)
}

fn cmd_recognize(input: &Path) -> Result<Value, CliError> {
    let text = read_input(input)?;
    let inst = instance::parse(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let mut map = serde_json::Map::new();
    for pattern in Pattern::ALL {
        let tester = PatternTester::new(pattern);
        let entry = match tester.find(&inst.graph) {
            None => json!("free"),
            Some(w) => json!({ "contains": w.iter().map(|v| v + 1).collect::<Vec<_>>() }),
        };
        map.insert(pattern.token().to_string(), entry);
    }
    eprintln!(
        "recognized {} patterns on {} vertices",
        Pattern::ALL.len(),
        inst.graph.vertex_count()
    );
    Ok(json!({ "schema_version": SCHEMA_VERSION, "patterns": Value::Object(map) }))
}

fn oracle_budget_from_env() -> OracleBudget {
    let mut budget = OracleBudget::default();
    if let Some(v) = std::env::var("ORACLE_MAX_EDGES").ok().and_then(|s| s.parse().ok()) {
        budget.max_edges = v;
    }
    if let Some(v) = std::env::var("ORACLE_MAX_VERTICES").ok().and_then(|s| s.parse().ok()) {
        budget.max_vertices = v;
    }
    budget
}

fn cmd_compare(input: &Path) -> Result<Value, CliError> {
    let text = read_input(input)?;
    let inst = instance::parse(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let budget = oracle_budget_from_env();
    let c = oracle::correspondence_check(&inst.graph, &budget)
        .map_err(|e| CliError::Resource(e.to_string()))?;
    eprintln!(
        "stc {} vs cd {}: {}",
        c.stc_opt,
        c.cd_opt,
        if c.corresponds { "correspond" } else { "gap" }
    );
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "stc": c.stc_opt,
        "cd": c.cd_opt,
        "corresponds": c.corresponds,
    }))
}

fn cmd_generate(
    family: &str,
    n: Option<usize>,
    p: Option<f64>,
    count: Option<usize>,
    seed: u64,
    pattern: Option<&str>,
    problem: ProblemKind,
    out: &Path,
) -> Result<Value, CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    let need = |o: Option<usize>, what: &str| {
        o.ok_or_else(|| CliError::Input(format!("family {family} requires --{what}")))
    };
    let (graphs, names, meta): (Vec<Graph>, Vec<String>, Value) = match family {
        "fig3" => {
            let (a, b) = generate::fig3_graphs();
            (
                vec![a, b],
                vec!["fig3-a".into(), "fig3-b".into()],
                json!({"family": "fig3"}),
            )
        }
        "gnp" => {
            let n = need(n, "n")?;
            let count = need(count, "count")?;
            let p = p.ok_or_else(|| CliError::Input("family gnp requires --p".into()))?;
            let spec = CorpusSpec::Gnp { n, p, count };
            let graphs = generate::corpus(seed, &spec)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let names = (0..count).map(|i| format!("gnp-{seed}-{i:03}")).collect();
            (graphs, names, json!({"family": "gnp", "n": n, "p": p, "seed": seed}))
        }
        "hfree" => {
            let n = need(n, "n")?;
            let count = need(count, "count")?;
            let p = p.unwrap_or(0.5);
            let pat: Pattern = pattern
                .ok_or_else(|| CliError::Input("family hfree requires --pattern".into()))?
                .parse()
                .map_err(|e: stc_core::patterns::UnknownPattern| CliError::Input(e.to_string()))?;
            let spec = CorpusSpec::HFree { pattern: pat, n, p, count };
            let graphs = generate::corpus(seed, &spec)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let names = (0..count)
                .map(|i| format!("{}-free-{seed}-{i:03}", pat.token()))
                .collect();
            (
                graphs,
                names,
                json!({"family": "hfree", "pattern": pat.token(), "n": n, "p": p, "seed": seed}),
            )
        }
        "all-labeled" => {
            let n = need(n, "n")?;
            let graphs = generate::corpus(seed, &CorpusSpec::AllLabeled { n })
                .map_err(|e| CliError::Input(e.to_string()))?;
            let names = (0..graphs.len()).map(|i| format!("all{n}-{i:06}")).collect();
            (graphs, names, json!({"family": "all-labeled", "n": n}))
        }
        other => return Err(CliError::Input(format!("unknown family: {other}"))),
    };

    let mut written = Vec::new();
    for (g, name) in graphs.iter().zip(&names) {
        let path = out.join(format!("{name}.instance"));
        fs::write(&path, instance::emit(problem, g))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let sidecar = out.join(format!("{name}.json"));
        let mut m = meta.clone();
        m["index"] = json!(written.len());
        m["vertices"] = json!(g.vertex_count());
        m["edges"] = json!(g.edge_count());
        m["problem"] = json!(problem);
        fs::write(&sidecar, serde_json::to_string_pretty(&m).unwrap())
            .map_err(|e| CliError::Input(format!("{}: {e}", sidecar.display())))?;
        written.push(path.display().to_string());
    }
    eprintln!("wrote {} instances to {}", written.len(), out.display());
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "count": written.len(),
        "written": written,
    }))
}

fn cmd_verify(input: &Path, result: &Path) -> Result<Value, CliError> {
    let text = read_input(input)?;
    let inst = instance::parse(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let record: Value = serde_json::from_str(&read_input(result)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", result.display())))?;
    let g = &inst.graph;

    let problem = record["problem"].as_str().unwrap_or_default();
    let cert = &record["certificate"];
    let edge_ids = |pairs: &Value| -> Result<Vec<usize>, String> {
        pairs
            .as_array()
            .ok_or("certificate edges must be an array")?
            .iter()
            .map(|pair| {
                let u = pair[0].as_u64().ok_or("bad endpoint")? as usize;
                let v = pair[1].as_u64().ok_or("bad endpoint")? as usize;
                if u == 0 || v == 0 || u > g.vertex_count() || v > g.vertex_count() {
                    return Err("endpoint out of range".to_string());
                }
                g.edge_id(u - 1, v - 1)
                    .ok_or_else(|| format!("{{{u}, {v}}} is not an edge"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e: String| e)
    };

    let (valid, reason) = if record["verdict"] == "no" {
        (true, Some("verdict is no; nothing to verify".to_string()))
    } else {
        match problem {
            "stc" => match edge_ids(&cert["strong"]) {
                Err(e) => (false, Some(e)),
                Ok(strong) => {
                    let lab = Labeling::from_strong(g, strong);
                    match labeling::is_stc_labeling(g, &lab) {
                        Ok(true) => (true, None),
                        Ok(false) => (false, Some("strong set violates STC".into())),
                        Err(e) => (false, Some(e.to_string())),
                    }
                }
            },
            "cd" => match edge_ids(&cert["deleted"]) {
                Err(e) => (false, Some(e)),
                Ok(deleted) => {
                    let d = DeletionSet::new(deleted);
                    if labeling::is_cluster_graph(&d.apply(g)) {
                        (true, None)
                    } else {
                        (false, Some("residual graph is not a cluster graph".into()))
                    }
                }
            },
            other => (false, Some(format!("unknown problem in record: {other}"))),
        }
    };
    eprintln!("verify: {}", if valid { "ok" } else { "INVALID" });
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "valid": valid,
        "reason": reason,
    }))
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Solve {
            problem,
            input,
            k,
            ell,
            optimal,
            no_kernel,
            trace,
            auto,
        } => cmd_solve(problem, &input, k, ell, optimal, no_kernel, trace, auto),
        Command::Kernelize {
            problem,
            input,
            k,
            ell,
            out,
        } => cmd_kernelize(problem, &input, k, ell, out.as_deref()),
        Command::Recognize { input } => cmd_recognize(&input),
        Command::Compare { input } => cmd_compare(&input),
        Command::Generate {
            family,
            n,
            p,
            count,
            seed,
            pattern,
            problem,
            out,
        } => cmd_generate(&family, n, p, count, seed, pattern.as_deref(), problem, &out),
        Command::Verify { input, result } => cmd_verify(&input, &result),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(record) => {
            println!("{}", serde_json::to_string_pretty(&record).unwrap());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (code, msg) = e.report();
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
