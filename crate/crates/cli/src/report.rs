use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use quandlelab::knot::LinkDiagram;
use quandlelab::quandle::quandle_to_json;
use quandlelab::{AbGroup, QuandleTable};

use crate::Format;

pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Printed before exiting, e.g. the mismatches of a failed verification.
    pub report: Option<Value>,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure { code: 2, message: msg.into(), report: None }
    }
}

/// Tags a library error with the stage that produced it.
pub trait Stage<T> {
    fn stage(self, what: &str) -> Result<T, Failure>;
}

impl<T> Stage<T> for quandlelab::Result<T> {
    fn stage(self, what: &str) -> Result<T, Failure> {
        self.map_err(|e| Failure { code: e.exit_code(), message: format!("{what}: {e}"), report: None })
    }
}

pub fn sha256(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("json serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn quandle_input(spec: &str, q: &QuandleTable) -> Value {
    json!({"source": spec, "size": q.size(), "sha256": sha256(&quandle_to_json(q))})
}

pub fn knot_input(spec: &str, d: &LinkDiagram) -> Value {
    json!({"source": spec, "crossings": d.pd().len(), "sha256": sha256(&d.to_json())})
}

pub fn group(g: &AbGroup) -> Value {
    json!({"rank": g.rank, "torsion": g.torsion, "display": g.to_string()})
}

pub fn print(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("json serializes")),
        Format::Human => {
            let mut lines = Vec::new();
            flatten("", v, &mut lines);
            for l in lines {
                println!("{l}");
            }
        }
    }
}

/// One `path: value` line per leaf; abelian groups print as their display form.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if m.contains_key("display") && m.contains_key("torsion") => {
            out.push(format!("{prefix}: {}", m["display"].as_str().unwrap_or("?")));
        }
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push(format!("{prefix}: {}", serde_json::to_string(v).unwrap()));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        _ => out.push(format!("{prefix}: {v}")),
    }
}
