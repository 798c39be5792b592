//! Browser bindings for the demo page. Every function takes and returns
//! JSON strings; errors come back as `{"error": "..."}`.

use serde::{Deserialize, Serialize};
use serde_json::json;
use wasm_bindgen::prelude::*;

use cbc_lab::classes::{classify, Theorem};
use cbc_lab::coloring::{cbc_number_with_witness, solve_k};
use cbc_lab::constructive::color_theorem;
use cbc_lab::planar::{planarity_embed, Embedding};
use cbc_lab::{BackbonePair, Graph};

/// Demo graphs stay small so exact search answers instantly.
const MAX_EXACT_N: usize = 14;

#[derive(Deserialize)]
struct Input {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    backbone: Vec<(usize, usize)>,
}

fn pair(input: &str) -> Result<BackbonePair, String> {
    let i: Input = serde_json::from_str(input).map_err(|e| e.to_string())?;
    let g = Graph::new(i.n, &i.edges).map_err(|e| e.to_string())?;
    BackbonePair::new(g, &i.backbone).map_err(|e| e.to_string())
}

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string()),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn analyze_impl(input: &str) -> Result<serde_json::Value, String> {
    let p = pair(input)?;
    let class = classify(&p, None).map_err(|e| e.to_string())?;
    let rotation = match planarity_embed(p.graph()) {
        Embedding::Planar(rs) => Some(rs.rotations().to_vec()),
        Embedding::Nonplanar(_) => None,
    };
    Ok(json!({ "class": class, "rotation": rotation }))
}

/// Class membership and a planar rotation system, if one exists.
#[wasm_bindgen]
pub fn analyze(input: &str) -> String {
    respond(analyze_impl(input))
}

fn solve_impl(input: &str, q: u32, k: u32) -> Result<serde_json::Value, String> {
    let p = pair(input)?;
    if p.n() > MAX_EXACT_N {
        return Err(format!("exact search is limited to {MAX_EXACT_N} vertices in the demo"));
    }
    if k == 0 {
        let (k, c) = cbc_number_with_witness(&p, q).map_err(|e| e.to_string())?;
        return Ok(json!({ "k": k, "colors": c.as_total() }));
    }
    let c = solve_k(&p, q, k).map_err(|e| e.to_string())?;
    Ok(json!({ "k": k, "colors": c.and_then(|c| c.as_total()) }))
}

/// Exact search. `k = 0` asks for the circular backbone chromatic number.
#[wasm_bindgen]
pub fn solve(input: &str, q: u32, k: u32) -> String {
    respond(solve_impl(input, q, k))
}

fn theorem_impl(input: &str, theorem: u8) -> Result<serde_json::Value, String> {
    let p = pair(input)?;
    let t = Theorem::from_number(theorem).ok_or_else(|| format!("no theorem {theorem}"))?;
    let cert = color_theorem(&p, t, None).map_err(|e| e.to_string())?;
    serde_json::to_value(&cert).map_err(|e| e.to_string())
}

/// Constructive coloring with the certificate log.
#[wasm_bindgen]
pub fn theorem_color(input: &str, theorem: u8) -> String {
    respond(theorem_impl(input, theorem))
}
