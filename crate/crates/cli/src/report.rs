use std::fmt::{self, Write as _};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Data only, nothing is asserted.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub status: Status,
    pub data: Value,
}

/// Results in execution order, serialized as a JSON object.
#[derive(Clone, Debug, Default)]
pub struct Results(pub Vec<(String, CheckResult)>);

impl Serialize for Results {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Results,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results: Results::default(),
            version: VERSION.to_string(),
            timing: None,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, data: Value) {
        self.results.0.push((name.into(), CheckResult { status, data }));
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.results.0.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.results
            .0
            .iter()
            .filter(|(_, r)| r.status == Status::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (v{})", self.command, self.version);
        if let Value::Object(m) = &self.inputs {
            for (k, v) in m {
                let _ = writeln!(out, "  {k} = {}", plain(v));
            }
        }
        for (name, r) in &self.results.0 {
            let _ = writeln!(out, "[{}] {name}", r.status);
            render_value(&mut out, &r.data, 1);
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "elapsed {} ms", t.elapsed_ms);
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(out, x, depth + 1);
                    }
                    Value::Array(xs) if xs.iter().any(|e| e.is_array() || e.is_object()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for e in xs {
                            let _ = writeln!(out, "{pad}  {}", plain(e));
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", plain(x));
                    }
                }
            }
        }
        Value::Null => {}
        other => {
            let _ = writeln!(out, "{pad}{}", plain(other));
        }
    }
}

/// True if any number (rather than a decimal string) appears in `v`.
pub fn contains_json_number(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(xs) => xs.iter().any(contains_json_number),
        Value::Object(m) => m.values().any(contains_json_number),
        _ => false,
    }
}
