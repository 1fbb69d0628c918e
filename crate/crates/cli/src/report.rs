//! Versioned JSON reports and their text rendering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportError {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub v: u32,
    /// Canonical text of the command that produced the report.
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
    /// Wall-clock milliseconds; only present on request since it breaks
    /// byte-identical output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl JsonReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            v: SCHEMA_VERSION,
            command: command.into(),
            params: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn param(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(k.into(), v.into());
        self
    }

    pub fn verdict(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.verdicts.insert(k.into(), v.into());
        self
    }

    pub fn witness(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.witnesses.insert(k.into(), v.into());
        self
    }

    pub fn fail(&mut self, kind: impl Into<String>, message: impl Into<String>) -> &mut Self {
        self.error = Some(ReportError {
            kind: kind.into(),
            message: message.into(),
        });
        self
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    /// Canonical JSON value: going through `Value` sorts every object's keys.
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports are plain data")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &JsonReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => canonical_json(&report.to_value()),
        Format::Text => render_text(report).into_bytes(),
    }
}

/// Output of a whole session: `{"v": 1, "reports": [...]}`.
pub fn emit_session(reports: &[JsonReport], format: Format) -> Vec<u8> {
    match format {
        Format::Json => canonical_json(&json!({
            "v": SCHEMA_VERSION,
            "reports": reports.iter().map(JsonReport::to_value).collect::<Vec<_>>(),
        })),
        Format::Text => reports
            .iter()
            .map(render_text)
            .collect::<Vec<_>>()
            .join("\n")
            .into_bytes(),
    }
}

fn canonical_json(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("values always serialize");
    out.push(b'\n');
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(r: &JsonReport) -> String {
    let mut out = format!("> {}\n", r.command);
    if let Some(e) = &r.error {
        out.push_str(&format!("  error {}: {}\n", e.kind, e.message));
    }
    for (k, v) in &r.verdicts {
        out.push_str(&format!("  {k}: {}\n", inline(v)));
    }
    if !r.params.is_empty() {
        let ps: Vec<String> = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect();
        out.push_str(&format!("  params: {}\n", ps.join(" ")));
    }
    for (k, v) in &r.witnesses {
        out.push_str(&format!("  witness {k}: {}\n", inline(v)));
    }
    if let Some(ms) = r.timing_ms {
        out.push_str(&format!("  time: {ms} ms\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_skeleton() {
        let bytes = emit_report(&JsonReport::new(""), Format::Json);
        let v: Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(
            v,
            json!({"v": 1, "command": "", "params": {}, "verdicts": {}, "witnesses": {}})
        );
    }

    #[test]
    fn reports_round_trip_and_sort_keys() {
        let mut r = JsonReport::new("probe archimedean Zmod(6)");
        r.verdict("zeta", false)
            .verdict("alpha", json!(["1/2", 3]))
            .witness("x", json!([1, 0]));
        r.fail("NotRigid", "witness 2");
        let bytes = emit_report(&r, Format::Json);
        let back: JsonReport = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back, r);
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
        assert!(text.find("\"command\"").unwrap() < text.find("\"error\"").unwrap());
    }

    #[test]
    fn text_rendering_lists_verdicts() {
        let mut r = JsonReport::new("mul A : e(1)");
        r.verdict("result", "e(1)");
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert_eq!(text, "> mul A : e(1)\n  result: e(1)\n");
    }
}
