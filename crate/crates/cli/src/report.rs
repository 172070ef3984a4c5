//! Report model and its JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    IllPosed,
    Skipped,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::IllPosed => "ILL-POSED",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub label: String,
    pub status: Status,
    pub witness: Option<String>,
    pub bound: Option<String>,
    pub terms: Option<u64>,
}

impl Case {
    pub fn new(label: impl Into<String>, status: Status) -> Self {
        Self {
            label: label.into(),
            status,
            witness: None,
            bound: None,
            terms: None,
        }
    }

    pub fn with_witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    pub fn with_bound(mut self, b: String) -> Self {
        self.bound = Some(b);
        self
    }

    pub fn with_terms(mut self, t: u64) -> Self {
        self.terms = Some(t);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub pass: u64,
    pub fail: u64,
    pub ill_posed: u64,
    pub skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub cases: Vec<Case>,
    pub totals: Totals,
    pub elapsed_ms: u64,
    pub version: String,
}

impl Report {
    pub fn new(
        command: &str,
        params: BTreeMap<String, String>,
        cases: Vec<Case>,
        elapsed_ms: u64,
    ) -> Self {
        let mut totals = Totals::default();
        for c in &cases {
            match c.status {
                Status::Pass => totals.pass += 1,
                Status::Fail => totals.fail += 1,
                Status::IllPosed => totals.ill_posed += 1,
                Status::Skipped => totals.skipped += 1,
            }
        }
        Self {
            command: command.to_string(),
            params,
            cases,
            totals,
            elapsed_ms,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(out, "{} {}", self.command, params.join(" "));
        for c in &self.cases {
            let _ = write!(out, "{:<9} {}", c.status.tag(), c.label);
            if let Some(b) = &c.bound {
                let _ = write!(out, "  bound={b}");
            }
            if let Some(t) = c.terms {
                let _ = write!(out, "  terms={t}");
            }
            if let Some(w) = &c.witness {
                let _ = write!(out, "  witness: {w}");
            }
            out.push('\n');
        }
        let t = &self.totals;
        let _ = writeln!(
            out,
            "totals: pass={} fail={} ill_posed={} skipped={}  ({} ms, v{})",
            t.pass, t.fail, t.ill_posed, t.skipped, self.elapsed_ms, self.version
        );
        out
    }
}
