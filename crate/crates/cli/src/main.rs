//! `cfc`: conflict-free connection colorings from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid or disconnected input,
//! 3 verifier path cap exceeded, 4 search budget exhausted or partial table,
//! 5 a verification or formula check failed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use cfc_core::audit::{self, AuditReport, Check, Outcome};
use cfc_core::coloring::{
    bridge_bound, check_conflict_free_connected, lemma4_coloring, ruler_path_coloring, write_coloring,
};
use cfc_core::exact::{cfc_exact, BoundReason, DEFAULT_BUDGET};
use cfc_core::extremal::{
    build_gk, build_max_bridge_graph, f_formula, gk_cfc, max_edges_with_k_bridges, table_from_census,
    Census, ExtremalTable,
};
use cfc_core::graph::{
    block_decomposition, parse_graph, random_connected_graph, to_dot,
    write_graph, DEFAULT_PATH_CAP, MAX_GENERATED_ORDER,
};
use cfc_core::{EdgeColoring, Error, Graph};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

const SCHEMA_VERSION: u32 = 1;
const RANDOM_SAMPLES: usize = 500;
const MAX_SAMPLE_ORDER: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "cfc", version, about = "Conflict-free connection colorings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Graph file in edge-list format ("n m" header, then one "u v" per line)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node limit for the exact search
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Enumerate one graph per isomorphism class (on) or every labeled graph (off)
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    dedup: Switch,
    /// Directory for output files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cut-edges, blocks and the bridge-bounded coloring of a graph
    Analyze,
    /// Exact conflict-free connection number with a certificate
    Exact,
    /// Exhaustive s/t/f/g tables for order n
    Tables,
    /// Build an extremal construction
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Check every closed-form claim for order n against the exhaustive census
    VerifyFormulas,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Construction {
    /// Clique K_{n-k-1} with k+1 pendant vertices
    Gk,
    /// Path P_n with its ruler coloring
    PathRuler,
    /// Clique K_{n-k} with k pendant vertices: k cut-edges, most edges possible
    MaxBridges,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Switch {
    On,
    Off,
}

struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<Run, Failure>;

/// What a command prints and how it exits.
struct Run {
    stdout: String,
    code: u8,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Graph(_) | Error::Parse(_) | Error::Disconnected | Error::TooSmall(_) | Error::TooLarge(_) => 2,
        Error::PathCapExceeded { .. } => 3,
        Error::BudgetExhausted { .. } => 4,
        Error::OutOfRange(_) | Error::Unrealizable(_) => 1,
        _ => 5,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn io_failure(path: &FsPath, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn require(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| usage(format!("--{flag} is required for this command")))
}

fn read_graph(cli: &Cli) -> Result<Graph, Failure> {
    let path = cli.input.as_ref().ok_or_else(|| usage("--input is required for this command"))?;
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let g = parse_graph(&text).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?;
    if g.order() < 2 {
        return Err(Error::TooSmall(2).into());
    }
    if !g.is_connected() {
        return Err(Error::Disconnected.into());
    }
    Ok(g)
}

fn write_out(cli: &Cli, files: &[(String, String)]) -> Result<(), Failure> {
    let Some(dir) = &cli.out else { return Ok(()) };
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| io_failure(&path, e))?;
    }
    Ok(())
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn cmd_analyze(cli: &Cli) -> CmdResult {
    let g = read_graph(cli)?;
    let d = block_decomposition(&g);
    let coloring = lemma4_coloring(&g)?;
    let verified = check_conflict_free_connected(&g, &coloring, DEFAULT_PATH_CAP)?.is_none();
    let bound = bridge_bound(&g);
    let bridges: Vec<usize> = d.bridges.iter().copied().collect();
    let stdout = match cli.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "analyze",
            "n": g.order(),
            "m": g.size(),
            "bridges": bridges,
            "blocks": d.blocks,
            "coloring": coloring.colors(),
            "colors_used": coloring.color_count(),
            "bound": bound,
            "verified": verified,
        })),
        Format::Csv => {
            let mut out = String::from("edge,u,v,bridge,block,color\n");
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                let block = d.block_of(e).map_or(String::new(), |b| b.to_string());
                let color = coloring.colors()[e];
                let _ = writeln!(out, "{e},{u},{v},{},{block},{color}", d.is_bridge(e));
            }
            out
        }
        Format::Text => {
            let mut out = format!("n={} m={}\n|B|={} bridges: [{}]\n", g.order(), g.size(), bridges.len(), join(&bridges, ", "));
            let _ = writeln!(out, "blocks: {}", d.blocks.len());
            for (i, block) in d.blocks.iter().enumerate() {
                let _ = writeln!(out, "  block {i}: edges [{}]", join(block, ", "));
            }
            let _ = writeln!(out, "coloring: {}", join(coloring.colors(), " "));
            let _ = writeln!(
                out,
                "|B|={}, bound={bound}, colors used={}, verified={verified}",
                bridges.len(),
                coloring.color_count()
            );
            out
        }
    };
    write_out(cli, &[
        ("coloring.txt".into(), write_coloring(&coloring)),
        ("graph.dot".into(), to_dot(&g, Some(&coloring))),
    ])?;
    Ok(Run { stdout, code: if verified { 0 } else { 5 } })
}

fn bound_reason(reason: BoundReason) -> &'static str {
    match reason {
        BoundReason::Trivial => "at least one color",
        BoundReason::PendantEdges => "pendant edges at one vertex need distinct colors",
        BoundReason::Tree => "trees need ceil(log2 n) colors",
    }
}

fn cmd_exact(cli: &Cli) -> CmdResult {
    let g = read_graph(cli)?;
    let r = match cfc_exact(&g, cli.budget) {
        Ok(r) => r,
        Err(Error::BudgetExhausted { budget }) => {
            let stdout = match cli.format {
                Format::Json => to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "exact",
                    "status": "unknown",
                    "value": null,
                    "budget": budget,
                })),
                Format::Csv => "value,nodes\nunknown,\n".into(),
                Format::Text => format!("cfc=unknown (budget of {budget} nodes exhausted)\n"),
            };
            return Ok(Run { stdout, code: 4 });
        }
        Err(e) => return Err(e.into()),
    };
    let stdout = match cli.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "exact",
            "status": "solved",
            "value": r.value,
            "lower_bound": r.lower_bound,
            "exhausted": r.exhausted,
            "nodes": r.nodes,
            "certificate": r.certificate.colors(),
        })),
        Format::Csv => {
            let mut out = String::from("edge,u,v,color\n");
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                let _ = writeln!(out, "{e},{u},{v},{}", r.certificate.colors()[e]);
            }
            out
        }
        Format::Text => {
            let mut out = format!("cfc={}\n", r.value);
            let lb = r.lower_bound;
            let _ = writeln!(out, "lower bound={} ({})", lb.value, bound_reason(lb.reason));
            if r.exhausted.is_empty() {
                let _ = writeln!(out, "optimality: matches the lower bound");
            }
            for level in &r.exhausted {
                let _ = writeln!(out, "optimality: {} colors refuted after {} nodes", level.colors, level.nodes);
            }
            let _ = writeln!(out, "nodes={}", r.nodes);
            out.push_str("certificate:\n");
            out.push_str(&write_coloring(&r.certificate));
            out
        }
    };
    write_out(cli, &[
        ("certificate.txt".into(), write_coloring(&r.certificate)),
        ("graph.dot".into(), to_dot(&g, Some(&r.certificate))),
    ])?;
    Ok(Run { stdout, code: 0 })
}

fn census_order(cli: &Cli) -> Result<usize, Failure> {
    let n = require(cli.n, "n")?;
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(usage(format!("--n must be in 1..={MAX_GENERATED_ORDER}")));
    }
    Ok(n)
}

fn build_census(cli: &Cli, n: usize) -> Result<Census, Failure> {
    Ok(Census::build_with(n, cli.budget, cli.dedup == Switch::On)?)
}

fn matrix(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let k = c.k.map_or(String::new(), |k| format!(" k={k}"));
        let _ = writeln!(out, "{:<7} {}{k}: {}", c.outcome.to_string(), c.name, c.detail);
    }
    out
}

fn cell(v: Option<usize>, missing: &str) -> String {
    v.map_or(missing.to_string(), |x| x.to_string())
}

fn table_text(table: &ExtremalTable) -> String {
    let mut out = format!(
        "n={} graphs={}{}\n",
        table.n,
        table.graph_count,
        if table.partial { " (partial)" } else { "" }
    );
    let _ = writeln!(out, "{:>3} {:>10} {:>10} {:>10} {:>15}  witnesses", "k", "s(n,k)", "t(n,k)", "f(n,k)", "g(n,k)");
    for r in &table.rows {
        let f = if r.k < 2 { "-".into() } else { cell(r.f, "vacuous") };
        let g = r.g.map_or("-".into(), |g| g.to_string());
        let _ = writeln!(
            out,
            "{:>3} {:>10} {:>10} {:>10} {:>15}  {}",
            r.k,
            cell(r.s, "undefined"),
            cell(r.t, "undefined"),
            f,
            g,
            r.witness_label()
        );
    }
    out
}

fn table_json(table: &ExtremalTable) -> String {
    to_json(&json!({ "schema_version": SCHEMA_VERSION, "table": table }))
}

fn outcome_code(partial: bool, checks: &[Check]) -> u8 {
    if partial {
        4
    } else if checks.iter().any(|c| c.outcome == Outcome::Fail) {
        5
    } else {
        0
    }
}

fn cmd_tables(cli: &Cli) -> CmdResult {
    let n = census_order(cli)?;
    let census = build_census(cli, n)?;
    let table = table_from_census(&census);
    let checks = audit::formula_checks(&census, &table, false);
    let report = matrix(&checks);
    let stdout = match cli.format {
        Format::Json => table_json(&table),
        Format::Csv => table.to_csv(),
        Format::Text => format!("{}\n{report}", table_text(&table)),
    };
    if cli.format != Format::Text {
        eprint!("{report}");
    }
    write_out(cli, &[
        (format!("table_n{n}.csv"), table.to_csv()),
        (format!("table_n{n}.json"), table_json(&table)),
    ])?;
    Ok(Run { stdout, code: outcome_code(table.partial, &checks) })
}

fn cmd_construct(cli: &Cli, kind: Construction) -> CmdResult {
    let n = require(cli.n, "n")?;
    let (name, g, coloring, summary) = match kind {
        Construction::Gk => {
            let k = require(cli.k, "k")?;
            let g = build_gk(n, k)?;
            let predicted = gk_cfc(n, k)?;
            let threshold = f_formula(n, k).ok();
            let summary = json!({ "k": k, "predicted_cfc": predicted, "f": threshold });
            ("gk", g, None, summary)
        }
        Construction::PathRuler => {
            let c = ruler_path_coloring(n)?;
            let summary = json!({ "colors": c.color_count() });
            ("path-ruler", Graph::path(n), Some(c), summary)
        }
        Construction::MaxBridges => {
            let k = require(cli.k, "k")?;
            let g = build_max_bridge_graph(n, k)?;
            let bound = max_edges_with_k_bridges(n, k)?;
            let summary = json!({ "k": k, "bridges": block_decomposition(&g).bridges.len(), "bound": bound });
            ("max-bridges", g, None, summary)
        }
    };
    let stdout = match cli.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "construct",
            "kind": name,
            "n": g.order(),
            "m": g.size(),
            "edges": g.edges(),
            "coloring": coloring.as_ref().map(EdgeColoring::colors),
            "summary": summary,
        })),
        Format::Csv => {
            let mut out = String::from("edge,u,v,color\n");
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                let color = coloring.as_ref().and_then(|c| c.color(e)).map_or(String::new(), |c| c.to_string());
                let _ = writeln!(out, "{e},{u},{v},{color}");
            }
            out
        }
        Format::Text => {
            let mut out = format!("# {name} n={n}\n");
            if let serde_json::Value::Object(fields) = &summary {
                for (key, value) in fields {
                    let _ = writeln!(out, "# {key}={value}");
                }
            }
            out.push_str(&write_graph(&g));
            out
        }
    };
    let mut files = vec![("graph.txt".into(), write_graph(&g)), ("graph.dot".into(), to_dot(&g, coloring.as_ref()))];
    if let Some(c) = &coloring {
        files.push(("coloring.txt".into(), write_coloring(c)));
    }
    write_out(cli, &files)?;
    Ok(Run { stdout, code: 0 })
}

fn samples(seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_SAMPLES)
        .map(|_| {
            let n = rng.gen_range(2..=MAX_SAMPLE_ORDER);
            let p = rng.gen_range(0.0..0.6);
            random_connected_graph(n, p, &mut rng)
        })
        .collect()
}

fn report_json(report: &AuditReport) -> String {
    to_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify-formulas",
        "all_passed": report.all_passed(),
        "report": report,
    }))
}

fn cmd_verify(cli: &Cli) -> CmdResult {
    let n = census_order(cli)?;
    let census = build_census(cli, n)?;
    let table = table_from_census(&census);
    let report = audit::audit(&census, &table, &samples(cli.seed), cli.budget);
    let stdout = match cli.format {
        Format::Json => report_json(&report),
        Format::Csv => {
            let mut out = String::from("n,check,k,outcome,detail\n");
            for c in &report.checks {
                let detail = c.detail.replace('"', "\"\"");
                let _ = writeln!(out, "{n},{},{},{},\"{detail}\"", c.name, cell(c.k, ""), c.outcome);
            }
            out
        }
        Format::Text => {
            let failed = report.failures().count();
            format!("{}{failed} failed of {} checks (n={n})\n", matrix(&report.checks), report.checks.len())
        }
    };
    write_out(cli, &[(format!("verify_n{n}.json"), report_json(&report))])?;
    Ok(Run { stdout, code: outcome_code(report.partial, &report.checks) })
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Analyze => cmd_analyze(cli),
        Command::Exact => cmd_exact(cli),
        Command::Tables => cmd_tables(cli),
        Command::Construct { kind } => cmd_construct(cli, *kind),
        Command::VerifyFormulas => cmd_verify(cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Run { stdout, code }) => {
            print!("{stdout}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
