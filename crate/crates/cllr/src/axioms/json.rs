//! JSON encoding of proof objects.
//!
//! A proof node is
//!
//! ```json
//! {"rule": "AXIOM" | "REF" | "TRANS" | "CONTEXT",
//!  "axiom": "DI5",          // AXIOM only
//!  "direction": "L2R",      // AXIOM only
//!  "claimLhs": "a.0",
//!  "claimRhs": "a.0 \\/ b.0",
//!  "children": [ ... ]}     // TRANS and CONTEXT only
//! ```
//!
//! Claim strings re-parse to the claimed terms. Emitted proofs reuse
//! shared subproofs by reference: the packed form is
//! `{"shared": [node, ...], "root": k}` where a child may be
//! `{"ref": j}` pointing at an earlier entry of the array. The checker
//! accepts both forms.

use super::{AxiomName, CtxOp, Direction, Proof, Rule};
use crate::syntax::parse;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::Arc;

fn node_json(p: &Proof, children: Vec<Value>) -> Value {
    let mut obj = json!({
        "claimLhs": p.lhs.to_string(),
        "claimRhs": p.rhs.to_string(),
    });
    match &p.rule {
        Rule::Refl => {
            obj["rule"] = json!("REF");
        }
        Rule::Axiom { name, dir } => {
            obj["rule"] = json!("AXIOM");
            obj["axiom"] = json!(name.to_string());
            obj["direction"] = json!(dir.to_string());
        }
        Rule::Trans(_, _) => {
            obj["rule"] = json!("TRANS");
            obj["children"] = Value::Array(children);
        }
        Rule::Context { .. } => {
            obj["rule"] = json!("CONTEXT");
            obj["children"] = Value::Array(children);
        }
    }
    obj
}

fn child_arcs(p: &Proof) -> Vec<&Arc<Proof>> {
    match &p.rule {
        Rule::Refl | Rule::Axiom { .. } => vec![],
        Rule::Trans(a, b) => vec![a, b],
        Rule::Context { children, .. } => children.iter().collect(),
    }
}

/// Inline tree encoding; shared subproofs are duplicated.
pub fn proof_to_json(p: &Proof) -> Value {
    let children = child_arcs(p).into_iter().map(|c| proof_to_json(c)).collect();
    node_json(p, children)
}

/// Packed encoding: every distinct node appears once in `shared`, children
/// are `{"ref": j}` entries pointing backwards.
pub fn proof_to_json_packed(p: &Proof) -> Value {
    fn visit_arc(
        p: &Arc<Proof>,
        shared: &mut Vec<Value>,
        ids: &mut HashMap<*const Proof, usize>,
    ) -> usize {
        if let Some(&id) = ids.get(&Arc::as_ptr(p)) {
            return id;
        }
        let children: Vec<Value> = child_arcs(p)
            .into_iter()
            .map(|c| json!({ "ref": visit_arc(c, shared, ids) }))
            .collect();
        let id = shared.len();
        shared.push(node_json(p, children));
        ids.insert(Arc::as_ptr(p), id);
        id
    }
    let mut shared = Vec::new();
    let mut ids = HashMap::new();
    let children: Vec<Value> = child_arcs(p)
        .into_iter()
        .map(|c| json!({ "ref": visit_arc(c, &mut shared, &mut ids) }))
        .collect();
    let root = shared.len();
    shared.push(node_json(p, children));
    json!({ "shared": shared, "root": root })
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value, String> {
    v.get(name).ok_or_else(|| format!("missing field `{name}`"))
}

fn str_field<'v>(v: &'v Value, name: &str) -> Result<&'v str, String> {
    field(v, name)?.as_str().ok_or_else(|| format!("field `{name}` must be a string"))
}

fn node_from_json(v: &Value, shared: &[Arc<Proof>]) -> Result<Proof, String> {
    let lhs = parse(str_field(v, "claimLhs")?).map_err(|e| format!("claimLhs: {e}"))?;
    let rhs = parse(str_field(v, "claimRhs")?).map_err(|e| format!("claimRhs: {e}"))?;
    let children = |v: &Value| -> Result<Vec<Arc<Proof>>, String> {
        let arr = field(v, "children")?
            .as_array()
            .ok_or_else(|| "field `children` must be an array".to_string())?;
        arr.iter()
            .map(|c| {
                if let Some(r) = c.get("ref") {
                    let idx = r
                        .as_u64()
                        .ok_or_else(|| "`ref` must be an index".to_string())?
                        as usize;
                    shared
                        .get(idx)
                        .cloned()
                        .ok_or_else(|| format!("`ref` {idx} points past the shared table"))
                } else {
                    node_from_json(c, shared).map(Arc::new)
                }
            })
            .collect()
    };
    let rule = match str_field(v, "rule")? {
        "REF" => Rule::Refl,
        "AXIOM" => {
            let name: AxiomName = str_field(v, "axiom")?.parse()?;
            let dir = match str_field(v, "direction")? {
                "L2R" => Direction::L2R,
                "R2L" => Direction::R2L,
                d => return Err(format!("unknown direction `{d}`")),
            };
            Rule::Axiom { name, dir }
        }
        "TRANS" => {
            let cs = children(v)?;
            if cs.len() != 2 {
                return Err(format!("TRANS needs 2 children, got {}", cs.len()));
            }
            let mut it = cs.into_iter();
            Rule::Trans(it.next().unwrap(), it.next().unwrap())
        }
        "CONTEXT" => {
            let cs = children(v)?;
            let (op, _) = CtxOp::decompose(&lhs, &rhs)
                .ok_or_else(|| "CONTEXT claims must share one operator layer".to_string())?;
            Rule::Context { op, children: cs }
        }
        r => return Err(format!("unknown rule `{r}`")),
    };
    Ok(Proof { lhs, rhs, rule })
}

/// Parses either encoding. Structural well-formedness only; validity is
/// [`super::check_proof`]'s job.
pub fn proof_from_json(v: &Value) -> Result<Proof, String> {
    if let Some(shared_v) = v.get("shared") {
        let arr = shared_v.as_array().ok_or_else(|| "`shared` must be an array".to_string())?;
        let mut shared: Vec<Arc<Proof>> = Vec::with_capacity(arr.len());
        for (i, node) in arr.iter().enumerate() {
            let p = node_from_json(node, &shared).map_err(|e| format!("shared[{i}]: {e}"))?;
            shared.push(Arc::new(p));
        }
        let root = field(v, "root")?
            .as_u64()
            .ok_or_else(|| "`root` must be an index".to_string())? as usize;
        let root = shared.get(root).ok_or_else(|| format!("root {root} out of range"))?;
        Ok((**root).clone())
    } else {
        node_from_json(v, &[])
    }
}
