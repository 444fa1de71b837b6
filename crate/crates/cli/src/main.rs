//! `imlab`: generate graphs, test containment, run detectors and structure
//! checks, and drive the harness suites.
//!
//! Exit codes: 0 when the run is clean, 1 when violations were found, 2 for
//! usage errors (bad arguments, unreadable or malformed input).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use imlab::containment::{contains, Relation};
use imlab::detectors::{
    contains_even_hole, contains_triangle, find_3pc, girth, is_3pc_with, is_prism_with, is_pyramid,
    is_theta, verify_hole, Kind, PrismRule,
};
use imlab::generators::{gen, GenSpec};
use imlab::graph::{Graph, VertexSet};
use imlab::harness::{run_suite, CorpusSpec, SuiteId, SuiteSpec};
use imlab::io::{emit_edge_list, emit_graph6, parse_graph};
use imlab::search::{Search, DEFAULT_BUDGET};
use imlab::structure::{
    check_all_path_common_center, check_one_path, classify_type, extract_k33_skeleton,
    path_type_centers, HostMode,
};

#[derive(Parser)]
#[command(
    name = "imlab",
    version,
    about = "Induced minors and 3-path configurations on small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    EdgeList,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    InducedSubgraph,
    InducedMinor,
    Minor,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Theta,
    Prism,
    Pyramid,
    #[value(name = "3pc")]
    ThreePc,
    EvenHole,
    Girth,
    Triangle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HostArg {
    Assume,
    Verify,
    Skip,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph, e.g. `gen grid 5 5`, `gen theta 2 3 4`, `gen K3,4`.
    Gen {
        family: String,
        params: Vec<String>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; defaults to edge list for `.txt`/`.edges` files and
        /// graph6 otherwise.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Test whether the host contains the pattern.
    Check {
        #[arg(long)]
        host: PathBuf,
        /// A graph file, or a family name such as `K3,3` or `k23star`.
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        relation: RelationArg,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search for a configuration, or with `--whole-graph` decide whether the
    /// graph itself is one.
    Detect {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        whole_graph: bool,
        /// Do not count prisms with a path of length zero.
        #[arg(long)]
        standard_prisms: bool,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Structure checks on vertex sets given as JSON: `x`, `y`, `z` with `a`
    /// (type of one set), `a` and `b` (both of type path), or `parts` (common
    /// center); or `connectors` and `contacts` (six-path skeleton).
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        sets: PathBuf,
        #[arg(long, value_enum, default_value_t = HostArg::Verify)]
        host_mode: HostArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a theorem or lemma suite and write its JSON report.
    Harness {
        #[arg(long)]
        suite: String,
        /// Exhaustive connected graphs up to this order.
        #[arg(long)]
        max_n: Option<usize>,
        /// Mixed samples at the three orders above `--max-n` (graph suites),
        /// or generated instances (generated suites).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// graph6 corpus file; may be repeated.
        #[arg(long)]
        corpus: Vec<PathBuf>,
        /// Tightness target or conjecture name.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that maps to an exit code.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            family,
            params,
            out,
            format,
        } => cmd_gen(&family, &params, out.as_deref(), format),
        Command::Check {
            host,
            pattern,
            relation,
            witness,
            budget,
        } => cmd_check(&host, &pattern, relation, witness.as_deref(), budget),
        Command::Detect {
            graph,
            what,
            whole_graph,
            standard_prisms,
            witness,
            budget,
        } => {
            let rule = if standard_prisms {
                PrismRule::Standard
            } else {
                PrismRule::AllowZero
            };
            cmd_detect(&graph, what, whole_graph, rule, witness.as_deref(), budget)
        }
        Command::Classify {
            graph,
            sets,
            host_mode,
            budget,
            out,
        } => {
            let mode = match host_mode {
                HostArg::Assume => HostMode::Assume,
                HostArg::Verify => HostMode::Verify { budget },
                HostArg::Skip => HostMode::Skip,
            };
            cmd_classify(&graph, &sets, mode, out.as_deref())
        }
        Command::Harness {
            suite,
            max_n,
            samples,
            seed,
            budget,
            corpus,
            variant,
            out,
        } => cmd_harness(
            &suite,
            max_n,
            samples,
            seed,
            budget,
            &corpus,
            variant,
            out.as_deref(),
        ),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("imlab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_json(path: Option<&Path>, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(family: &str, params: &[String], out: Option<&Path>, format: Option<Format>) -> Outcome {
    let text = if params.is_empty() {
        family.to_string()
    } else {
        format!("{family}({})", params.join(","))
    };
    let spec: GenSpec = text.parse()?;
    let g = gen(&spec)?;
    let by_ext = out
        .and_then(|p| p.extension())
        .is_some_and(|e| e == "txt" || e == "edges");
    let body = match format.unwrap_or(if by_ext {
        Format::EdgeList
    } else {
        Format::Graph6
    }) {
        Format::Graph6 => emit_graph6(&g) + "\n",
        Format::EdgeList => emit_edge_list(&g),
    };
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        None => print!("{body}"),
    }
    Ok(true)
}

fn cmd_check(
    host: &Path,
    pattern: &str,
    relation: RelationArg,
    witness: Option<&Path>,
    budget: u64,
) -> Outcome {
    let g = read_graph(host)?;
    let h = if Path::new(pattern).is_file() {
        read_graph(Path::new(pattern))?
    } else {
        gen(&pattern.parse()?)?
    };
    let relation = match relation {
        RelationArg::InducedSubgraph => Relation::InducedSubgraph,
        RelationArg::InducedMinor => Relation::InducedMinor,
        RelationArg::Minor => Relation::Minor,
    };
    let r = contains(&g, &h, relation, budget);
    if !r.verify_witness(&g, &h) {
        return Err(Failure(
            "internal error: witness failed verification".into(),
        ));
    }
    let out = json!({
        "relation": relation,
        "found": r.found(),
        "branch_sets": r.branch_sets,
        "stats": { "status": r.status, "nodes": r.nodes, "budget": budget, "elapsed_ms": r.elapsed.as_millis() as u64 },
    });
    println!(
        "{relation}: {}",
        serde_json::to_string(&r.status)?.trim_matches('"')
    );
    if let Some(p) = witness {
        write_json(Some(p), &out)?;
    }
    Ok(true)
}

fn status_json<T: Serialize>(s: &Search<T>) -> (&'static str, serde_json::Value) {
    match s {
        Search::Found(w) => ("found", json!(w)),
        Search::NotFound => ("not_found", serde_json::Value::Null),
        Search::Indeterminate => ("indeterminate", serde_json::Value::Null),
    }
}

fn cmd_detect(
    path: &Path,
    what: What,
    whole: bool,
    rule: PrismRule,
    witness: Option<&Path>,
    budget: u64,
) -> Outcome {
    let g = read_graph(path)?;
    let kinds: Option<&[Kind]> = match what {
        What::Theta => Some(&[Kind::Theta]),
        What::Prism => Some(&[Kind::Prism]),
        What::Pyramid => Some(&[Kind::Pyramid]),
        What::ThreePc => Some(&Kind::ALL),
        _ => None,
    };
    let (status, value) = match (what, whole, kinds) {
        (_, false, Some(kinds)) => status_json(&find_3pc(&g, kinds, rule, budget)),
        (_, true, Some(_)) => {
            let w = match what {
                What::Theta => is_theta(&g),
                What::Prism => is_prism_with(&g, rule),
                What::Pyramid => is_pyramid(&g),
                _ => is_3pc_with(&g, rule),
            };
            match w {
                Some(w) => ("found", json!(w)),
                None => ("not_found", serde_json::Value::Null),
            }
        }
        (What::EvenHole, false, _) => status_json(&contains_even_hole(&g)),
        (What::EvenHole, true, _) => {
            let cycle = cycle_order(&g);
            match cycle.filter(|c| c.len() % 2 == 0 && verify_hole(&g, c)) {
                Some(c) => ("found", json!({ "cycle": c })),
                None => ("not_found", serde_json::Value::Null),
            }
        }
        (What::Triangle, false, _) => match contains_triangle(&g) {
            Some(t) => ("found", json!(t)),
            None => ("not_found", serde_json::Value::Null),
        },
        (What::Triangle, true, _) => {
            let k3 = g.n() == 3 && g.m() == 3;
            (
                if k3 { "found" } else { "not_found" },
                if k3 {
                    json!([0, 1, 2])
                } else {
                    serde_json::Value::Null
                },
            )
        }
        (What::Girth, false, _) => ("found", json!(girth(&g))),
        (What::Girth, true, _) => {
            return Err(Failure("--whole-graph does not apply to girth".into()))
        }
        _ => unreachable!("every detector is covered"),
    };
    println!("{status}");
    let out = json!({ "what": what_name(what), "whole_graph": whole, "status": status, "witness": value });
    if let Some(p) = witness {
        write_json(Some(p), &out)?;
    }
    Ok(true)
}

fn what_name(w: What) -> &'static str {
    match w {
        What::Theta => "theta",
        What::Prism => "prism",
        What::Pyramid => "pyramid",
        What::ThreePc => "3pc",
        What::EvenHole => "even-hole",
        What::Girth => "girth",
        What::Triangle => "triangle",
    }
}

/// The vertex order of the graph when it is a single cycle.
fn cycle_order(g: &Graph) -> Option<Vec<usize>> {
    if g.n() < 3 || (0..g.n()).any(|v| g.degree(v) != 2) || !g.is_connected() {
        return None;
    }
    let mut order = vec![0, g.neighbors(0)[0]];
    while order.len() < g.n() {
        let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
        order.push(*g.neighbors(cur).iter().find(|&&w| w != prev)?);
    }
    Some(order)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetsFile {
    x: Option<VertexSet>,
    y: Option<VertexSet>,
    z: Option<VertexSet>,
    a: Option<VertexSet>,
    b: Option<VertexSet>,
    parts: Option<Vec<VertexSet>>,
    connectors: Option<[VertexSet; 3]>,
    contacts: Option<[VertexSet; 3]>,
}

fn cmd_classify(path: &Path, sets: &Path, mode: HostMode, out: Option<&Path>) -> Outcome {
    let g = read_graph(path)?;
    let text =
        std::fs::read_to_string(sets).map_err(|e| Failure(format!("{}: {e}", sets.display())))?;
    let s: SetsFile = serde_json::from_str(&text)?;
    if let (Some(conn), Some(cont)) = (&s.connectors, &s.contacts) {
        let r = extract_k33_skeleton(
            &g,
            [&conn[0], &conn[1], &conn[2]],
            [&cont[0], &cont[1], &cont[2]],
            mode,
        )?;
        write_json(
            out,
            &json!({ "check": "skeleton", "report": r, "violation": r.violation() }),
        )?;
        return Ok(!r.violation());
    }
    let (Some(x), Some(y), Some(z)) = (&s.x, &s.y, &s.z) else {
        return Err(Failure(
            "sets file needs x, y and z, or connectors and contacts".into(),
        ));
    };
    let xyz = [x, y, z];
    match (&s.a, &s.b, &s.parts) {
        (_, _, Some(parts)) => {
            let r = check_all_path_common_center(&g, parts, xyz, mode)?;
            write_json(
                out,
                &json!({ "check": "common_center", "report": r, "holds": r.holds(), "violation": r.violation() }),
            )?;
            Ok(!r.violation())
        }
        (Some(a), Some(b), None) => {
            let r = check_one_path(&g, a, b, xyz, mode)?;
            write_json(
                out,
                &json!({ "check": "both_path", "report": r, "violation": r.violation() }),
            )?;
            Ok(!r.violation())
        }
        (Some(a), None, None) => {
            let w = classify_type(&g, a, xyz)?;
            let centers = path_type_centers(&g, a, xyz)?;
            write_json(
                out,
                &json!({ "check": "type", "type": w.name(), "witness": w, "centers": centers }),
            )?;
            Ok(true)
        }
        _ => Err(Failure(
            "sets file needs a (with optional b) or parts".into(),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_harness(
    suite: &str,
    max_n: Option<usize>,
    samples: Option<usize>,
    seed: u64,
    budget: u64,
    corpus: &[PathBuf],
    variant: Option<String>,
    out: Option<&Path>,
) -> Outcome {
    let id: SuiteId = suite.parse()?;
    let mut spec = SuiteSpec::new(id, seed, budget);
    spec.variant = variant;
    if max_n.is_some() || samples.is_some() || !corpus.is_empty() {
        spec.corpus = custom_corpus(&spec, max_n, samples, corpus);
    }
    let report = run_suite(&spec)?;
    let text = report.to_json() + "\n";
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    eprintln!(
        "{}: {} processed, {} violations, {} indeterminate, {} finds{}",
        report.suite,
        report.processed,
        report.violations.len(),
        report.indeterminates.len(),
        report.finds.len(),
        report
            .refused
            .as_deref()
            .map(|r| format!(" (refused: {r})"))
            .unwrap_or_default()
    );
    Ok(report.is_clean())
}

/// Replaces the default corpus. Graph corpora start where the default
/// exhaustive range starts; samples sit just above `--max-n`.
fn custom_corpus(
    spec: &SuiteSpec,
    max_n: Option<usize>,
    samples: Option<usize>,
    files: &[PathBuf],
) -> Vec<CorpusSpec> {
    let default_min = spec
        .corpus
        .iter()
        .find_map(|c| match c {
            CorpusSpec::Exhaustive { min_n, .. } | CorpusSpec::Sampled { min_n, .. } => {
                Some(*min_n)
            }
            _ => None,
        })
        .unwrap_or(1);
    let generated = spec
        .corpus
        .iter()
        .any(|c| matches!(c, CorpusSpec::Generated { .. }));
    let mut out = Vec::new();
    if let Some(k) = max_n {
        out.push(CorpusSpec::Exhaustive {
            min_n: default_min.min(k),
            max_n: k,
        });
    }
    if let Some(count) = samples {
        if generated {
            out.push(CorpusSpec::Generated { count });
        } else {
            let base = max_n.unwrap_or(default_min.saturating_sub(1).max(8));
            out.push(CorpusSpec::Sampled {
                min_n: base + 1,
                max_n: base + 3,
                count,
            });
        }
    }
    out.extend(files.iter().map(|p| CorpusSpec::File {
        path: p.to_string_lossy().into_owned(),
    }));
    out
}
