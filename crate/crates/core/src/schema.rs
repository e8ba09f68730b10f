//! Version tag carried by every JSON artifact.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA: &str = "lamgraph/1";

/// Serializes `doc` pretty-printed with a `"schema"` key added.
pub fn to_tagged_json<T: Serialize>(doc: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&tag(serde_json::to_value(doc)?))?)
}

pub fn tag(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut out = serde_json::Map::new();
            out.insert("schema".into(), Value::String(SCHEMA.into()));
            out.extend(map.into_iter().filter(|(k, _)| k != "schema"));
            Value::Object(out)
        }
        other => other,
    }
}

/// Parses JSON, rejecting artifacts tagged with another schema version.
pub fn parse_tagged(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text)?;
    match v.get("schema") {
        None => Ok(v),
        Some(Value::String(s)) if s == SCHEMA => Ok(v),
        Some(other) => Err(Error::invalid(format!("unsupported schema {other}, expected {SCHEMA}"))),
    }
}
