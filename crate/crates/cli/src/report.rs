//! The one output format. JSON is the serialization; the text view is a
//! flattening of the same value.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write;

pub const AUT_GENERAL: &str = "Aut-general surface assumed";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub assumptions: Vec<String>,
    /// Library routines the results come from.
    pub references: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Seconds since the Unix epoch; omitted with `--no-timestamp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    /// Wall-clock time of the computation; omitted with `--no-timestamp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            assumptions: Vec::new(),
            references: Vec::new(),
            error: None,
            generated_at: None,
            elapsed_ms: None,
        }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.inputs.insert(key.into(), serde_json::to_value(v).expect("inputs serialize"));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        for (key, val) in v.as_object().expect("a report is an object") {
            match val {
                Value::String(s) => writeln!(out, "{key}: {s}").unwrap(),
                Value::Array(a) if a.is_empty() => writeln!(out, "{key}: none").unwrap(),
                Value::Object(m) if m.is_empty() => writeln!(out, "{key}: none").unwrap(),
                Value::Array(items) if items.iter().all(Value::is_string) => {
                    writeln!(out, "{key}:").unwrap();
                    for i in items {
                        writeln!(out, "  - {}", i.as_str().unwrap()).unwrap();
                    }
                }
                Value::Object(_) | Value::Array(_) => {
                    writeln!(out, "{key}:").unwrap();
                    flatten(val, "", &mut out);
                }
                other => writeln!(out, "{key}: {other}").unwrap(),
            }
        }
        out
    }
}

/// Nested arrays of scalars (matrices, pairs) stay on one line.
fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(is_leaf),
        Value::Object(_) => false,
        _ => true,
    }
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(x, &join(k), out);
            }
        }
        Value::Array(a) if !is_leaf(v) => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => writeln!(out, "  {path}: {s}").unwrap(),
        leaf => writeln!(out, "  {path}: {leaf}").unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trips_through_json() {
        let mut r = Report::new("classify").input("r", 41);
        r.results = json!({ "tag": "Z2", "generators": [[[13, 24], [-7, -13]]] });
        r.assumptions.push(AUT_GENERAL.into());
        r.generated_at = Some(1);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let mut bare = r.clone();
        bare.generated_at = None;
        assert!(!bare.to_json().contains("generated_at"));
    }

    #[test]
    fn text_flattens_nested_values() {
        let mut r = Report::new("x");
        r.results = json!({ "a": { "b": [1, 2] }, "list": [{ "k": "v" }] });
        let t = r.to_text();
        assert!(t.contains("  a.b: [1,2]\n") && t.contains("  list[0].k: v\n"), "{t}");
        assert!(t.contains("inputs: none\n"));
    }
}
