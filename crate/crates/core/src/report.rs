//! JSON reports. Keys come out sorted and floats are rounded to 12
//! significant digits so that reruns with the same seed are byte-identical.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::basicaffine::EmbeddedPoint;
use crate::error::{Error, Result};
use crate::implosion::Stratum;
use crate::numgeom::Verification;
use crate::rootdata::RootDatum;

pub const SCHEMA_VERSION: u32 = 1;

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Rounds every float in `v`. Non-finite floats have no JSON form; serde
/// already writes them as `null`.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonicalize(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x)
        .map(canonicalize)
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Wraps `body` in an object carrying the schema version.
pub fn envelope(body: Map<String, Value>) -> Value {
    let mut out = body;
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    Value::Object(out)
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn strata_report(d: &RootDatum, strata: &[Stratum]) -> Result<Value> {
    let mut body = Map::new();
    body.insert("group".into(), json!(d.name()));
    body.insert("strata".into(), to_value(&strata)?);
    Ok(envelope(body))
}

/// `[{weight, mult}]` in weight order.
pub fn character_entries<'a>(entries: impl IntoIterator<Item = (&'a Vec<i64>, &'a i64)>) -> Value {
    Value::Array(
        entries
            .into_iter()
            .map(|(w, m)| json!({ "weight": w, "mult": m }))
            .collect(),
    )
}

/// Complex coordinates as `[re, im]` pairs, one array per module.
pub fn embedded_point(v: &EmbeddedPoint) -> Value {
    let modules = v
        .modules
        .iter()
        .map(|m| Value::Array(m.iter().map(|z| json!([z.re, z.im])).collect()))
        .collect();
    canonicalize(Value::Array(modules))
}

pub fn verification_report(group: &str, suite: &str, checks: &[Verification]) -> Result<Value> {
    let mut body = Map::new();
    body.insert("group".into(), json!(group));
    body.insert("suite".into(), json!(suite));
    body.insert("pass".into(), json!(checks.iter().all(|c| c.pass)));
    body.insert("checks".into(), to_value(&checks)?);
    Ok(envelope(body))
}
