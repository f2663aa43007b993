//! JSON derivation files.
//!
//! A node is `{ "conclusion": sequent, "rule": tag, "principal":
//! [[idx, "L"|"R", formula]], "eigen"?, "witness"?, "premises": […] }`;
//! cut nodes add `"cutFormula"`, `"k"`, and `"alignment"`; the structural
//! rules add `"pos"` (Ew, Mrg) or `"sub"` (Sub). Serialization is canonical
//! (sorted keys, canonical formula printing), so emit ∘ parse ∘ emit is the
//! identity on emitted files.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::calculus::{CutInstance, Derivation, RuleInstance, RuleTag, Side};
use crate::sequent::{parse_sequent, Sequent};
use crate::syntax::{parse_formula_inferring, Formula, Signature, SyntaxError};

#[derive(Error, Debug)]
pub enum SerializeError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("derivation file: {0}")]
    Schema(String),
}

pub fn derivation_to_value(d: &Derivation) -> Value {
    let mut node = Map::new();
    node.insert("conclusion".into(), json!(d.conclusion.to_string()));
    node.insert("rule".into(), json!(d.rule.tag().name()));
    let principal: Vec<Value> = d
        .rule
        .principal
        .iter()
        .map(|(c, side, f)| json!([c, side.to_string(), f.to_string()]))
        .collect();
    node.insert("principal".into(), json!(principal));
    if let Some(e) = &d.rule.eigen {
        node.insert("eigen".into(), json!(e));
    }
    if let Some(w) = &d.rule.witness {
        node.insert("witness".into(), json!(w));
    }
    if let Some((a, b)) = &d.rule.sub_map {
        node.insert("sub".into(), json!([a, b]));
    }
    if let Some(pos) = d.rule.pos {
        node.insert("pos".into(), json!(pos));
    }
    if let Some(cut) = &d.rule.cut {
        node.insert("cutFormula".into(), json!(cut.cut_formula.to_string()));
        node.insert("k".into(), json!(cut.multiplicities));
        node.insert("alignment".into(), json!([cut.alignment.0, cut.alignment.1]));
    }
    let premises: Vec<Value> = d.premises.iter().map(derivation_to_value).collect();
    node.insert("premises".into(), json!(premises));
    Value::Object(node)
}

pub fn derivation_to_json(d: &Derivation) -> String {
    serde_json::to_string_pretty(&derivation_to_value(d)).expect("derivation serializes")
}

pub fn derivation_from_json(text: &str) -> Result<Derivation, SerializeError> {
    let value: Value = serde_json::from_str(text)?;
    derivation_from_value(&value)
}

fn get_str<'v>(obj: &'v Map<String, Value>, key: &str) -> Result<&'v str, SerializeError> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| SerializeError::Schema(format!("missing string field `{key}`")))
}

fn parse_side(s: &str) -> Result<Side, SerializeError> {
    match s {
        "L" => Ok(Side::Left),
        "R" => Ok(Side::Right),
        other => Err(SerializeError::Schema(format!("bad side `{other}`"))),
    }
}

fn formula(text: &str) -> Result<Formula, SerializeError> {
    let mut sig = Signature::new();
    Ok(parse_formula_inferring(text, &mut sig)?)
}

pub fn derivation_from_value(value: &Value) -> Result<Derivation, SerializeError> {
    let obj = value
        .as_object()
        .ok_or_else(|| SerializeError::Schema("node must be an object".into()))?;
    let mut sig = Signature::new();
    let conclusion: Sequent = parse_sequent(get_str(obj, "conclusion")?, &mut sig)?;
    let tag_name = get_str(obj, "rule")?;
    let tag = RuleTag::from_name(tag_name)
        .ok_or_else(|| SerializeError::Schema(format!("unknown rule `{tag_name}`")))?;
    let mut rule = RuleInstance::tagged(tag);
    if let Some(principal) = obj.get("principal").and_then(Value::as_array) {
        for entry in principal {
            let triple = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| SerializeError::Schema("principal entry must be a triple".into()))?;
            let idx = triple[0]
                .as_u64()
                .ok_or_else(|| SerializeError::Schema("principal index".into()))?
                as usize;
            let side = parse_side(
                triple[1]
                    .as_str()
                    .ok_or_else(|| SerializeError::Schema("principal side".into()))?,
            )?;
            let f = formula(
                triple[2]
                    .as_str()
                    .ok_or_else(|| SerializeError::Schema("principal formula".into()))?,
            )?;
            rule.principal.push((idx, side, f));
        }
    }
    if let Some(e) = obj.get("eigen") {
        rule.eigen = Some(
            e.as_str()
                .ok_or_else(|| SerializeError::Schema("eigen must be a string".into()))?
                .to_string(),
        );
    }
    if let Some(w) = obj.get("witness") {
        rule.witness = Some(
            w.as_str()
                .ok_or_else(|| SerializeError::Schema("witness must be a string".into()))?
                .to_string(),
        );
    }
    if let Some(s) = obj.get("sub") {
        let pair = s
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| SerializeError::Schema("sub must be a pair".into()))?;
        rule.sub_map = Some((
            pair[0].as_str().unwrap_or_default().to_string(),
            pair[1].as_str().unwrap_or_default().to_string(),
        ));
    }
    if let Some(p) = obj.get("pos") {
        rule.pos =
            Some(p.as_u64().ok_or_else(|| SerializeError::Schema("pos must be an index".into()))?
                as usize);
    }
    if let Some(cf) = obj.get("cutFormula") {
        let cut_formula = formula(
            cf.as_str().ok_or_else(|| SerializeError::Schema("cutFormula".into()))?,
        )?;
        let k: Vec<usize> = obj
            .get("k")
            .and_then(Value::as_array)
            .ok_or_else(|| SerializeError::Schema("cut node needs `k`".into()))?
            .iter()
            .map(|v| v.as_u64().map(|n| n as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| SerializeError::Schema("`k` must hold integers".into()))?;
        let alignment = obj
            .get("alignment")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| SerializeError::Schema("cut node needs `alignment`".into()))?;
        let g = alignment[0]
            .as_u64()
            .ok_or_else(|| SerializeError::Schema("alignment values".into()))? as usize;
        let h = alignment[1]
            .as_u64()
            .ok_or_else(|| SerializeError::Schema("alignment values".into()))? as usize;
        rule.cut = Some(CutInstance { cut_formula, multiplicities: k, alignment: (g, h) });
    }
    let premises = obj
        .get("premises")
        .and_then(Value::as_array)
        .map(|arr| arr.iter().map(derivation_from_value).collect::<Result<Vec<_>, _>>())
        .transpose()?
        .unwrap_or_default();
    Ok(Derivation { conclusion, rule, premises })
}
