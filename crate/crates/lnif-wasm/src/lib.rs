//! Browser bindings for the interactive demo page: prove a formula and
//! render the proof tree, search for a countermodel, and query the
//! Goedel-chain oracle. Each entry point takes formula text and returns a
//! JSON string the page renders directly.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use lnif_core::prover::{prove, SearchConfig};
use lnif_core::semantics::{find_countermodel, goedel_valid, GoedelVerdict};
use lnif_core::syntax::parse_formula_inferring;
use lnif_core::{Derivation, Sequent, Signature};

fn tree_json(d: &Derivation) -> serde_json::Value {
    json!({
        "sequent": d.conclusion.to_string(),
        "rule": d.rule.tag().name(),
        "premises": d.premises.iter().map(tree_json).collect::<Vec<_>>(),
    })
}

/// Prove `|- formula` within the depth bound; returns the proof tree, its
/// LaTeX rendering, and search metadata.
#[wasm_bindgen]
pub fn prove_formula(text: &str, depth: usize) -> String {
    let mut sig = Signature::new();
    let formula = match parse_formula_inferring(text, &mut sig) {
        Ok(f) => f,
        Err(e) => return json!({"status": "parse-error", "message": e.to_string()}).to_string(),
    };
    let cfg = SearchConfig { depth, ..Default::default() };
    match prove(&Sequent::goal(formula), &cfg) {
        Ok(d) => json!({
            "status": "proved",
            "height": d.height(),
            "rules": d.size(),
            "tree": tree_json(&d),
            "latex": lnif_core::latex::latex_document(&d),
        })
        .to_string(),
        Err(e) => json!({"status": "failed", "message": e.to_string()}).to_string(),
    }
}

/// Search for a finite linear countermodel within the bounds; returns the
/// model as world/valuation rows the page draws as a chain.
#[wasm_bindgen]
pub fn countermodel(text: &str, worlds: usize, domain: usize) -> String {
    let mut sig = Signature::new();
    let formula = match parse_formula_inferring(text, &mut sig) {
        Ok(f) => f,
        Err(e) => return json!({"status": "parse-error", "message": e.to_string()}).to_string(),
    };
    match find_countermodel(&formula, worlds, domain) {
        Some((model, world)) => {
            let closed = formula.universal_closure();
            let rows: Vec<serde_json::Value> = (0..model.worlds())
                .map(|w| {
                    json!({
                        "world": w + 1,
                        "holds": model.eval(w, &closed).unwrap_or(false),
                    })
                })
                .collect();
            json!({
                "status": "refuted",
                "model": model.to_string(),
                "falsifiedAt": world + 1,
                "worlds": rows,
            })
            .to_string()
        }
        None => json!({"status": "none", "worlds": worlds, "domain": domain}).to_string(),
    }
}

/// Decide a propositional formula over the Goedel chain with
/// (variables + 2) truth degrees.
#[wasm_bindgen]
pub fn goedel_oracle(text: &str) -> String {
    let mut sig = Signature::new();
    let formula = match parse_formula_inferring(text, &mut sig) {
        Ok(f) => f,
        Err(e) => return json!({"status": "parse-error", "message": e.to_string()}).to_string(),
    };
    match goedel_valid(&formula) {
        Ok(GoedelVerdict::Valid) => json!({"status": "valid"}).to_string(),
        Ok(GoedelVerdict::Invalid { assignment, denominator }) => json!({
            "status": "invalid",
            "assignment": assignment,
            "denominator": denominator,
        })
        .to_string(),
        Err(e) => json!({"status": "error", "message": e.to_string()}).to_string(),
    }
}
