//! Scenario reports: a timestamp header, then one JSON record per item in
//! id order, then a summary record.

use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not decidable within the configured budget.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub id: String,
    pub check: String,
    pub status: Status,
    pub detail: Value,
}

impl Item {
    pub fn new(id: impl Into<String>, check: &str, status: Status, detail: Value) -> Self {
        Item { id: id.into(), check: check.into(), status, detail }
    }

    pub fn check(id: impl Into<String>, check: &str, ok: bool, detail: Value) -> Self {
        Self::new(id, check, if ok { Status::Pass } else { Status::Fail }, detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub items: Vec<Item>,
    /// Extra summary fields, such as witness found-rates.
    pub notes: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(scenario: &str, seed: u64) -> Self {
        Report { scenario: scenario.into(), seed, items: Vec::new(), notes: BTreeMap::new() }
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn summary(&self) -> Value {
        let mut s = json!({
            "scenario": self.scenario,
            "seed": self.seed,
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "skipped": self.count(Status::Skipped),
        });
        for (k, v) in &self.notes {
            s[k] = v.clone();
        }
        s
    }

    /// Everything but the header line; identical across runs with the
    /// same configuration.
    pub fn body(&self) -> String {
        let mut items: Vec<&Item> = self.items.iter().collect();
        items.sort_by(|a, b| a.id.cmp(&b.id));
        let mut out = String::new();
        for item in items {
            out.push_str(&serde_json::to_string(item).expect("items serialise"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary()).expect("summary serialises"));
        out.push('\n');
        out
    }

    pub fn digest(&self) -> String {
        Sha256::digest(self.body().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn render(&self) -> String {
        let stamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        format!("# generated {stamp}\n{}", self.body())
    }

    /// Writes `<dir>/<scenario>.jsonl`.
    pub fn write(&self, dir: &Path) -> io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.jsonl", self.scenario));
        std::fs::write(&path, self.render())?;
        Ok(path)
    }
}

/// The body of a report file, with its header line removed.
pub fn strip_header(text: &str) -> &str {
    match text.split_once('\n') {
        Some((first, rest)) if first.starts_with("# generated ") => rest,
        _ => text,
    }
}
