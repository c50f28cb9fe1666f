use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use gonal_core::CoverParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl From<&CoverParams> for ParamsEcho {
    fn from(c: &CoverParams) -> Self {
        Self { p: c.p(), q: c.q(), r: c.r() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: None }
    }

    pub fn failed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status: Status::Fail, detail: Some(detail.into()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Everything a command reports. JSON and text output are both rendered
/// from this value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub params: Option<ParamsEcho>,
    pub checks: Vec<Check>,
    pub payload: Value,
    pub timing_us: u64,
}

impl ReportEnvelope {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.params {
            Some(p) => writeln!(out, "{}  p={} q={} r={}", self.command, p.p, p.q, p.r),
            None => writeln!(out, "{}", self.command),
        }
        .unwrap();
        if let Value::Object(map) = &self.payload {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in map {
                render_field(&mut out, k, v, width, 1);
            }
        }
        if !self.checks.is_empty() {
            out.push_str("checks\n");
            for c in &self.checks {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                };
                write!(out, "  {status}  {}", c.name).unwrap();
                if let Some(d) = &c.detail {
                    write!(out, "  ({d})").unwrap();
                }
                out.push('\n');
            }
        }
        writeln!(out, "({:.1} ms)", self.timing_us as f64 / 1000.0).unwrap();
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn render_field(out: &mut String, key: &str, v: &Value, width: usize, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Array(xs) if xs.iter().any(Value::is_object) => {
            writeln!(out, "{pad}{key}").unwrap();
            for x in xs {
                writeln!(out, "{pad}  {}", scalar(x)).unwrap();
            }
        }
        Value::Object(m) => {
            writeln!(out, "{pad}{key}").unwrap();
            let w = m.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in m {
                render_field(out, k, v, w, depth + 1);
            }
        }
        _ => writeln!(out, "{pad}{key:<width$}  {}", scalar(v)).unwrap(),
    }
}
