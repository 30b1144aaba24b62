//! Browser bindings: each entry point takes plain arguments and returns a
//! `vertexlab/1` JSON document, or throws a message string.

use serde_json::json;
use vertexlab::bs_pairs::tvir_bs;
use vertexlab::cy_vertex::{cy_vertex_mirror, cy_vertex_topological, Chamber};
use vertexlab::json;
use vertexlab::qm_components::{enumerate_components, tvir_quasimap};
use wasm_bindgen::prelude::*;

// Keeps the page responsive and the results small.
const MAX_ORDER: u32 = 12;
const MAX_BOUND: u32 = 4;
const MAX_SIZE: usize = 6;

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// m-core and m-quotient of the partition `parts`, e.g. `"3,2,1"`.
#[wasm_bindgen]
pub fn quotient(m: usize, parts: &str) -> Result<String, String> {
    if m == 0 {
        return Err(err("m must be at least 1"));
    }
    let p = json::parse_multipartition(&format!("[[{parts}]]"))
        .map_err(err)?
        .leg(0)
        .clone();
    let (core, q) = (p.m_core(m), p.m_quotient(m));
    let body = json!({
        "m": m,
        "partition": json::partition(&p),
        "core": json::partition(&core),
        "quotient": json::multipartition(&q),
        "text": format!("core {core}, quotient {q}"),
    });
    Ok(json::envelope("quotient", body).to_string())
}

/// The topological-vertex and mirror series for `legs`, with whether they agree.
#[wasm_bindgen]
pub fn cy_vertex(legs: &str, order: u32) -> Result<String, String> {
    if order > MAX_ORDER {
        return Err(err(format!("order must lie in 0..={MAX_ORDER}")));
    }
    let l = json::parse_multipartition(legs).map_err(err)?;
    if l.size() > MAX_SIZE {
        return Err(err(format!("at most {MAX_SIZE} boxes")));
    }
    let top = cy_vertex_topological(&l, order.into()).map_err(err)?;
    let mirror = cy_vertex_mirror(&l, Chamber::Minus, order.into()).map_err(err)?;
    let body = json!({
        "legs": json::multipartition(&l),
        "topological": top.to_string(),
        "mirror": mirror.to_string(),
        "agree": top == mirror,
        "series": json::series(&top),
    });
    Ok(json::envelope("cy-vertex", body).to_string())
}

/// Stable fixed components over `legs` with labels in `[-bound, bound]`,
/// each with its curve class, virtual dimension and whether `T^vir` of the
/// BS pair matches that of the quasimap.
#[wasm_bindgen]
pub fn components(legs: &str, bound: u32) -> Result<String, String> {
    if bound > MAX_BOUND {
        return Err(err(format!("bound must lie in 0..={MAX_BOUND}")));
    }
    let l = json::parse_multipartition(legs).map_err(err)?;
    if l.size() > 3 {
        return Err(err("at most 3 boxes"));
    }
    let cs: Vec<_> = enumerate_components(&l, bound.into())
        .iter()
        .map(|c| {
            let mut v = json::labeling(c);
            v["tvir_agree"] = json!(tvir_bs(c) == tvir_quasimap(c));
            v
        })
        .collect();
    Ok(json::envelope(
        "components",
        json!({"target": json::multipartition(&l), "components": cs}),
    )
    .to_string())
}
