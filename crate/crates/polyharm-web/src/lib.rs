//! Browser bindings. Each export wraps a plain function that is also usable natively.

use polyharm::classify::{classify_bk, BkCase};
use polyharm::quiverrep::{build_cyclic_module, classify_cyclic, CyclicCase, NodeType, Quiver};
use polyharm::specsolve::{construct_case, CaseParams};
use polyharm::symcalc::{expand, pretty, Form};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Builds a case form. Returns JSON with the form, its display before and after expansion,
/// and the label recovered by the classifier.
pub fn construct_inner(label: &str, k: i64, d: u32) -> Result<String, String> {
    let label: BkCase = label.parse().map_err(err)?;
    let form = construct_case(label, k, d, &CaseParams::default()).map_err(err)?;
    let recovered = classify_bk(&form).map_err(err)?;
    Ok(json!({
        "display": pretty(&form),
        "expanded": pretty(&expand(&form)),
        "label": recovered.to_string(),
        "form": serde_json::to_value(&form).map_err(err)?,
    })
    .to_string())
}

/// Classifies a form given as JSON.
pub fn classify_inner(form_json: &str) -> Result<String, String> {
    let form = Form::from_json(form_json).map_err(err)?;
    let label = classify_bk(&form).map_err(err)?;
    Ok(json!({ "label": label.to_string(), "data": label }).to_string())
}

/// Builds a cyclic quiver module and reports its dimension vector and classification.
pub fn quiver_inner(quiver: &str, node: &str, case: &str, depth: u32) -> Result<String, String> {
    let quiver: Quiver = quiver.parse().map_err(err)?;
    let node: NodeType = node.parse().map_err(err)?;
    let case: CyclicCase = case.parse().map_err(err)?;
    let rep = build_cyclic_module(quiver, node, case, depth).map_err(err)?;
    let class = classify_cyclic(&rep).map_err(err)?;
    Ok(json!({ "dims": rep.dims(), "class": class, "rep": rep }).to_string())
}

#[wasm_bindgen]
pub fn construct(label: &str, k: i32, d: u32) -> Result<String, JsValue> {
    construct_inner(label, k as i64, d).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(form_json: &str) -> Result<String, JsValue> {
    classify_inner(form_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn quiver(quiver: &str, node: &str, case: &str, depth: u32) -> Result<String, JsValue> {
    quiver_inner(quiver, node, case, depth).map_err(|e| JsValue::from_str(&e))
}
