//! Versioned JSON envelope and the plain-text table view.

use serde_json::{json, Map, Value};

use crate::commands::Outcome;
use crate::{Cli, Format};

pub const SCHEMA: &str = "galilei/1";

/// Rebuilds every object with sorted keys, whatever map type serde_json uses.
fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonical(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

pub fn envelope(cli: &Cli, outcome: &Outcome) -> Value {
    canonical(&json!({
        "schema": SCHEMA,
        "command": outcome.command,
        "seed": cli.seed,
        "pass": outcome.pass,
        "report": outcome.report,
    }))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn render(cli: &Cli, outcome: &Outcome) -> String {
    let doc = envelope(cli, outcome);
    match cli.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("JSON values serialize"),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", &doc, &mut rows);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter().map(|(k, v)| format!("{k:<width$}  {v}")).collect::<Vec<_>>().join("\n")
        }
    }
}
