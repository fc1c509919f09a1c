//! Browser bindings: evaluate a query on a pasted graph, show how compact
//! the ladder answer stays, and draw random answer paths.
//!
//! Each export returns a JSON string. The plain `*_json` functions hold the
//! logic so that it can be tested off the browser.

use pmr_core::analysis::{count_paths, enumerate, graph_projection, sample_uniform};
use pmr_core::fixtures::ladder_graph;
use pmr_core::graph::{GraphDb, Path};
use pmr_core::pmr::Pmr;
use pmr_core::query::{eval, EvalOptions, Query};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest ladder the demo builds.
pub const MAX_LADDER: usize = 64;

fn options() -> EvalOptions {
    EvalOptions {
        missing_nodes_match_nothing: true,
        ..EvalOptions::default()
    }
}

fn load(graph: &str, query: &str) -> Result<(GraphDb, Pmr), String> {
    let g = GraphDb::parse(graph).map_err(|e| format!("graph: {e}"))?;
    let q = Query::parse(query.trim()).map_err(|e| format!("query: {e}"))?;
    let r = eval(&g, &q, &options()).map_err(|e| e.to_string())?;
    Ok((g, r))
}

fn row(g: &GraphDb, p: &Path) -> Value {
    json!({
        "src": g.node_name(p.source()),
        "tgt": g.node_name(p.target()),
        "path": p.render(g),
    })
}

/// Evaluates `query`: the path count, PMR size, up to `limit` rows and the
/// edges of the projected subgraph.
pub fn evaluate_json(graph: &str, query: &str, limit: usize) -> Result<String, String> {
    let (g, r) = load(graph, query)?;
    let count = count_paths(&r).map_err(|e| e.to_string())?;
    let mut it = enumerate(&r);
    let rows: Vec<Value> = it.by_ref().take(limit).map(|p| row(&g, &p)).collect();
    let truncated = it.next().is_some();
    let proj = graph_projection(&r, &g).map_err(|e| e.to_string())?;
    let edges: Vec<&str> = proj.edges().map(|e| proj.edge_name(e)).collect();
    Ok(json!({
        "count": count.to_string(),
        "rep_nodes": r.node_count(),
        "rep_edges": r.edge_count(),
        "rows": rows,
        "truncated": truncated,
        "projection": edges,
    })
    .to_string())
}

/// The ladder with `n` diamonds: graph size, answer size and the path count.
pub fn ladder_json(n: usize) -> Result<String, String> {
    if !(1..=MAX_LADDER).contains(&n) {
        return Err(format!("n must be between 1 and {MAX_LADDER}"));
    }
    let g = ladder_graph(n);
    let q = Query::parse("select(src={x}, tgt={y}, lang(a*))").expect("fixed query parses");
    let r = eval(&g, &q, &options()).map_err(|e| e.to_string())?;
    let count = count_paths(&r).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "graph_nodes": g.node_count(),
        "graph_edges": g.edge_count(),
        "rep_nodes": r.node_count(),
        "rep_edges": r.edge_count(),
        "count": count.to_string(),
        "graph": g.to_text(),
    })
    .to_string())
}

/// `draws` uniform samples from the answer of `query`, optionally among
/// paths of one length.
pub fn sample_json(
    graph: &str,
    query: &str,
    seed: u64,
    draws: usize,
    length: Option<usize>,
) -> Result<String, String> {
    let (g, r) = load(graph, query)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for _ in 0..draws {
        match sample_uniform(&r, length, &mut rng).map_err(|e| e.to_string())? {
            Some(p) => rows.push(row(&g, &p)),
            None => break,
        }
    }
    Ok(Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn evaluate(graph: &str, query: &str, limit: usize) -> Result<String, JsError> {
    evaluate_json(graph, query, limit).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ladder(n: usize) -> Result<String, JsError> {
    ladder_json(n).map_err(|e| JsError::new(&e))
}

/// `length < 0` samples among all paths.
#[wasm_bindgen]
pub fn sample(
    graph: &str,
    query: &str,
    seed: u64,
    draws: usize,
    length: i32,
) -> Result<String, JsError> {
    let length = usize::try_from(length).ok();
    sample_json(graph, query, seed, draws, length).map_err(|e| JsError::new(&e))
}
