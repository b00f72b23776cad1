//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::arctrans::{arc_orbit_profile, ArcError, ArcOrbitProfile};
use crate::autiso::{automorphism_group, invariant_signature, AutError};
use crate::classify::{
    build_delta_graph, case_by_id, run_all, run_case, ClassificationReport, ClassifyError, SearchReport,
    SignatureRecord,
};
use crate::graphs::{Graph, GraphError, GroupAction};
use crate::groupdata::{catalog, load_group, load_group_file, DataError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    GraphFile { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("could not start thread pool: {0}")]
    Threads(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cayley-census", version, about = "Census of tetravalent 2-arc-transitive Cayley graphs on simple groups")]
pub struct RunConfig {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run classification cases and report which claims were reproduced.
    Classify(ClassifyArgs),
    /// Write Γ(Δi) in edge-list format.
    BuildGraph(BuildGraphArgs),
    /// Report invariants, automorphism group order and arc-transitivity of a graph.
    Analyze(AnalyzeArgs),
    /// List the shipped groups with their verified orders.
    Catalog,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CaseSelection {
    /// Run every case.
    #[arg(long)]
    pub all: bool,
    /// Run one case by id.
    #[arg(long)]
    pub case: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub selection: CaseSelection,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildGraphArgs {
    /// Index of the Δ-orbit.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub delta: u8,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Graph in edge-list format.
    #[arg(long)]
    pub graph: PathBuf,
    /// Generator file for a group acting on the vertices; defaults to the full
    /// automorphism group.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Expected value, e.g. `aut_order=24`; a mismatch exits with status 1.
    #[arg(long = "expect", value_parser = parse_expectation)]
    pub expect: Vec<(String, String)>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_expectation(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    if !ANALYSIS_KEYS.contains(&k) {
        return Err(format!("unknown key `{k}` (known: {})", ANALYSIS_KEYS.join(", ")));
    }
    Ok((k.to_string(), v.to_string()))
}

const ANALYSIS_KEYS: &[&str] =
    &["vertex_count", "edge_count", "valency", "connected", "girth", "aut_order", "s_transitivity", "group_order"];

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub schema: u32,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub valency: Option<usize>,
    pub connected: bool,
    pub signature: SignatureRecord,
    pub aut_order: String,
    /// Order of the acting group: the supplied group, else the automorphism group.
    pub group_order: String,
    pub arc_profile: ArcOrbitProfile,
    pub s_transitivity: usize,
    pub expectations: Vec<ExpectationResult>,
}

#[derive(Debug, Serialize)]
pub struct ExpectationResult {
    pub key: String,
    pub expected: String,
    pub observed: String,
    pub holds: bool,
}

impl Analysis {
    fn value(&self, key: &str) -> String {
        match key {
            "vertex_count" => self.vertex_count.to_string(),
            "edge_count" => self.edge_count.to_string(),
            "valency" => self.valency.map_or("none".into(), |v| v.to_string()),
            "connected" => self.connected.to_string(),
            "girth" => self.signature.girth.map_or("none".into(), |v| v.to_string()),
            "aut_order" => self.aut_order.clone(),
            "s_transitivity" => self.s_transitivity.to_string(),
            "group_order" => self.group_order.clone(),
            _ => unreachable!("keys are validated when parsed"),
        }
    }
}

/// Analyzes a graph, optionally under a supplied group of automorphisms.
pub fn analyze(graph: &Graph, group: Option<GroupAction>, expect: &[(String, String)]) -> Result<Analysis, CliError> {
    let aut = automorphism_group(graph)?;
    let action = group.unwrap_or_else(|| GroupAction::natural(aut.group.clone()));
    let profile = arc_orbit_profile(graph, &action)?;
    let mut analysis = Analysis {
        schema: crate::classify::SCHEMA_VERSION,
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        valency: graph.valency(),
        connected: graph.is_connected(),
        signature: SignatureRecord::from(&invariant_signature(graph)),
        aut_order: aut.order.to_string(),
        group_order: action.group().order_big().to_string(),
        s_transitivity: profile.transitivity(),
        arc_profile: profile,
        expectations: Vec::new(),
    };
    analysis.expectations = expect
        .iter()
        .map(|(k, v)| {
            let observed = analysis.value(k);
            ExpectationResult { key: k.clone(), expected: v.clone(), holds: observed == *v, observed }
        })
        .collect();
    Ok(analysis)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    Graph::parse_edge_list(&text).map_err(|source| CliError::GraphFile { path: path.to_path_buf(), source })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Fails early if the output file cannot be created.
fn check_writable(out: Option<&Path>) -> Result<(), CliError> {
    if let Some(path) = out {
        std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn case_text(r: &SearchReport, out: &mut String) {
    let _ = writeln!(out, "case {} ({} in {}): {:?}", r.case.id, r.case.stabilizer_type, r.case.ambient, r.verdict);
    for c in &r.claims {
        let mark = if c.holds { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "  {mark} {} = {} (expected {})", c.label, c.observed, c.expected);
    }
}

fn report_text(report: &ClassificationReport) -> String {
    let mut out = String::new();
    for r in &report.cases {
        case_text(r, &mut out);
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "summary: {} graphs built, {} up to isomorphism, {} non-normal, regular groups {:?}, Aut orders {:?}, vertex stabilizers {:?}",
        s.graphs_built, s.distinct_graphs, s.non_normal, s.regular_groups, s.aut_orders, s.aut_vertex_stabilizer_orders
    );
    if s.all_claims_hold {
        let _ = writeln!(out, "all claims reproduced");
    } else {
        let _ = writeln!(out, "{} claims not reproduced:", s.failed_claims.len());
        for f in &s.failed_claims {
            let _ = writeln!(out, "  {f}");
        }
    }
    out
}

fn analysis_text(a: &Analysis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", a.vertex_count);
    let _ = writeln!(out, "edges: {}", a.edge_count);
    let _ = writeln!(out, "valency: {}", a.valency.map_or("irregular".into(), |v| v.to_string()));
    let _ = writeln!(out, "connected: {}", a.connected);
    let _ = writeln!(out, "girth: {}", a.signature.girth.map_or("none".into(), |v| v.to_string()));
    let _ = writeln!(out, "cycle counts: {:?}", a.signature.cycle_counts);
    let _ = writeln!(out, "refinement cells: {:?}", a.signature.refinement_histogram);
    let _ = writeln!(out, "aut order: {}", a.aut_order);
    let _ = writeln!(out, "acting group order: {}", a.group_order);
    for l in &a.arc_profile.levels {
        let _ = writeln!(out, "{}-arcs: {} in {} orbits", l.s, l.arc_count, l.orbit_count);
    }
    let _ = writeln!(out, "s-transitivity: {}", a.s_transitivity);
    for e in &a.expectations {
        let mark = if e.holds { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{mark} {} = {} (expected {})", e.key, e.observed, e.expected);
    }
    out
}

fn execute(cfg: RunConfig) -> Result<i32, CliError> {
    match cfg.command {
        Command::Catalog => {
            let mut rows = Vec::new();
            for e in catalog() {
                let spec = load_group(e.name)?;
                rows.push(serde_json::json!({
                    "name": e.name,
                    "degree": e.degree,
                    "order": spec.group.order_big().to_string(),
                    "transitive": spec.group.is_transitive(),
                }));
            }
            let text = match cfg.format {
                Format::Json => to_json(&serde_json::json!({ "schema": crate::classify::SCHEMA_VERSION, "groups": rows })),
                Format::Text => rows.iter().fold(String::new(), |mut s, r| {
                    let _ = writeln!(s, "{:<14} degree {:>3}  order {}", r["name"].as_str().unwrap_or(""), r["degree"], r["order"].as_str().unwrap_or(""));
                    s
                }),
            };
            write_output(None, &text)?;
            Ok(EXIT_OK)
        }
        Command::Classify(args) => {
            check_writable(args.out.as_deref())?;
            let (text, ok) = match args.selection.case {
                Some(id) => {
                    let case = case_by_id(&id).map_err(|e| CliError::Usage(e.to_string()))?;
                    let report = run_case(&case)?;
                    let ok = report.all_claims_hold();
                    let text = match cfg.format {
                        Format::Json => to_json(&report),
                        Format::Text => {
                            let mut s = String::new();
                            case_text(&report, &mut s);
                            s
                        }
                    };
                    (text, ok)
                }
                None => {
                    let report = run_all()?;
                    let ok = report.summary.all_claims_hold;
                    let text = match cfg.format {
                        Format::Json => to_json(&report),
                        Format::Text => report_text(&report),
                    };
                    (text, ok)
                }
            };
            write_output(args.out.as_deref(), &text)?;
            Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
        }
        Command::BuildGraph(args) => {
            check_writable(Some(&args.out))?;
            let graph = build_delta_graph(args.delta as usize)?;
            write_output(Some(&args.out), &graph.to_edge_list())?;
            Ok(EXIT_OK)
        }
        Command::Analyze(args) => {
            check_writable(args.out.as_deref())?;
            let graph = read_graph(&args.graph)?;
            let action = match &args.group {
                Some(path) => {
                    let spec = load_group_file(path)?;
                    if spec.group.degree() != graph.vertex_count() {
                        return Err(CliError::Usage(format!(
                            "group has degree {}, graph has {} vertices",
                            spec.group.degree(),
                            graph.vertex_count()
                        )));
                    }
                    Some(GroupAction::natural(spec.group))
                }
                None => None,
            };
            let analysis = analyze(&graph, action, &args.expect)?;
            let text = match cfg.format {
                Format::Json => to_json(&analysis),
                Format::Text => analysis_text(&analysis),
            };
            write_output(args.out.as_deref(), &text)?;
            let ok = analysis.expectations.iter().all(|e| e.holds);
            Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
        }
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn cmd_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads as usize).build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", CliError::Threads(e.to_string()));
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(cfg)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Classify(_) | CliError::Aut(_) | CliError::Arc(_) => EXIT_VERIFICATION_FAILED,
                _ => EXIT_USAGE,
            }
        }
    }
}
