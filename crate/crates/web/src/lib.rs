//! Browser bindings. Every export takes plain strings and returns a JSON
//! document; failures come back as `{"error": "..."}` so the page never has
//! to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use imlab::containment::{contains, Relation};
use imlab::detectors::{contains_even_hole, find_3pc, girth, Kind, PrismRule};
use imlab::generators::{gen, GenSpec};
use imlab::graph::Graph;
use imlab::io::{emit_graph6, parse_graph};
use imlab::search::Search;

/// Browser searches get a smaller default than the command line so the tab
/// stays responsive.
pub const WEB_BUDGET: u64 = 2_000_000;

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn describe(g: &Graph) -> Value {
    json!({ "graph6": emit_graph6(g), "n": g.n(), "m": g.m(), "edges": g.edges().collect::<Vec<_>>() })
}

fn search_json<T: serde::Serialize>(s: Search<T>) -> Value {
    match s {
        Search::Found(w) => json!({ "status": "found", "witness": w }),
        Search::NotFound => json!({ "status": "not_found" }),
        Search::Indeterminate => json!({ "status": "indeterminate" }),
    }
}

/// Builds a graph from a family spec such as `grid(4,5)` or `K3,4`.
#[wasm_bindgen]
pub fn generate(spec: &str) -> String {
    wrap(generate_value(spec))
}

fn generate_value(spec: &str) -> Result<Value, String> {
    let spec: GenSpec = spec.trim().parse().map_err(|e| format!("{e}"))?;
    let g = gen(&spec).map_err(|e| e.to_string())?;
    Ok(describe(&g))
}

/// Runs one detector (`theta`, `prism`, `pyramid`, `3pc`, `even-hole`,
/// `girth`) on a graph given as graph6 or an edge list.
#[wasm_bindgen]
pub fn detect(graph: &str, what: &str) -> String {
    wrap(detect_value(graph, what))
}

fn detect_value(graph: &str, what: &str) -> Result<Value, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    let kinds: &[Kind] = match what {
        "theta" => &[Kind::Theta],
        "prism" => &[Kind::Prism],
        "pyramid" => &[Kind::Pyramid],
        "3pc" => &Kind::ALL,
        "even-hole" => return Ok(search_json(contains_even_hole(&g))),
        "girth" => return Ok(json!({ "status": "found", "witness": girth(&g) })),
        other => return Err(format!("unknown detector {other:?}")),
    };
    Ok(search_json(find_3pc(
        &g,
        kinds,
        PrismRule::AllowZero,
        WEB_BUDGET,
    )))
}

/// Tests whether `host` contains `pattern` as an induced minor. The pattern
/// may be a family spec or a graph in either text format.
#[wasm_bindgen]
pub fn check_induced_minor(host: &str, pattern: &str) -> String {
    wrap(check_value(host, pattern))
}

fn check_value(host: &str, pattern: &str) -> Result<Value, String> {
    let g = parse_graph(host).map_err(|e| e.to_string())?;
    let h = match pattern.trim().parse::<GenSpec>() {
        Ok(spec) => gen(&spec).map_err(|e| e.to_string())?,
        Err(_) => parse_graph(pattern).map_err(|e| e.to_string())?,
    };
    let r = contains(&g, &h, Relation::InducedMinor, WEB_BUDGET);
    Ok(json!({
        "relation": Relation::InducedMinor,
        "found": r.found(),
        "status": r.status,
        "branch_sets": r.branch_sets,
        "nodes": r.nodes,
    }))
}
