use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One JSON document per invocation. Fields are declared in alphabetical
/// order and nested objects are key-sorted, so a parse/serialize round trip
/// reproduces the bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultEnvelope {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub seed: Option<u64>,
    pub version: String,
    pub wall_time_ms: u64,
}

impl ResultEnvelope {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("envelope is plain JSON");
        text.push('\n');
        text
    }

    /// `key,value` rows with dotted paths; array elements use their index.
    pub fn to_csv(&self) -> String {
        let value = serde_json::to_value(self).expect("envelope is plain JSON");
        let mut rows = Vec::new();
        flatten("", &value, &mut rows);
        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            out.push_str(&csv_field(&k));
            out.push(',');
            out.push_str(&csv_field(&v));
            out.push('\n');
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, rows)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, rows)),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Null => rows.push((prefix.to_string(), String::new())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
