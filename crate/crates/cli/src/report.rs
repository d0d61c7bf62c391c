//! JSON renderings of core results. Every top-level document carries
//! `"schema": 1`.

use concat_blocking_core::bounds::{BoundsReport, Value as BoundValue};
use concat_blocking_core::{Certificate, LinearCode, WeightDistribution, Witness};
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

/// Wraps `body` with the schema version and command name.
pub fn document(command: &str, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        doc.extend(fields);
    }
    Value::Object(doc)
}

pub fn certificate(c: &Certificate) -> Value {
    let witness = match &c.witness {
        None => Value::Null,
        Some(Witness::Codewords { message, codeword, sub_message, sub_codeword }) => json!({
            "kind": "codewords",
            "message": message,
            "codeword": codeword,
            "sub_message": sub_message,
            "sub_codeword": sub_codeword,
        }),
        Some(Witness::Hyperplane { normal, rank }) => json!({
            "kind": "hyperplane",
            "normal": normal,
            "rank": rank,
        }),
    };
    json!({
        "verdict": c.verdict.as_str(),
        "method": c.method.as_str(),
        "witness": witness,
    })
}

pub fn code_summary(c: &LinearCode) -> Value {
    let f = c.field();
    json!({
        "p": f.p(),
        "m": f.m(),
        "q": f.order(),
        "n": c.n(),
        "k": c.k(),
    })
}

pub fn generator_rows(c: &LinearCode) -> Value {
    let rows: Vec<&[u32]> = (0..c.k()).map(|i| c.generator().row(i)).collect();
    json!(rows)
}

/// Nonzero entries as `[[weight, count], ...]`.
pub fn weights(w: &WeightDistribution) -> Value {
    let pairs: Vec<(usize, u64)> = w.nonzero().collect();
    json!(pairs)
}

pub fn bounds(kind: &str, r: &BoundsReport) -> Value {
    let mut context = Map::new();
    for (k, v) in &r.context {
        context.insert((*k).into(), json!(v));
    }
    let mut values = Map::new();
    for (k, v) in &r.values {
        let v = match v {
            BoundValue::Int(i) => match u64::try_from(*i) {
                Ok(small) => json!(small),
                Err(_) => json!(i.to_string()),
            },
            BoundValue::Real(x) => json!(x),
        };
        values.insert((*k).into(), v);
    }
    json!({ "kind": kind, "context": context, "values": values })
}

pub fn to_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}
