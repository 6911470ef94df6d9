use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::graph::Graph;
use crate::graph6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    Confirmed,
    OutOfScope,
    Tie,
    Refuted,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "Confirmed",
            Status::OutOfScope => "OutOfScope",
            Status::Tie => "Tie",
            Status::Refuted => "Refuted",
        })
    }
}

/// Outcome of one check. `margin` is `None` when no competitor or instance
/// bounded it (for example a class with a single member).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub witness_graphs: Vec<String>,
    pub q_values: Vec<f64>,
    pub margin: Option<f64>,
    pub runtime_ms: u64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            parameters: BTreeMap::new(),
            status: Status::Confirmed,
            witness_graphs: Vec::new(),
            q_values: Vec::new(),
            margin: None,
            runtime_ms: 0,
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable parameter"),
        );
        self
    }

    pub fn witness(&mut self, g: &Graph) {
        self.witness_graphs.push(graph6::encode(g));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Writes `<dir>/<check_id>.json` and returns the path.
    pub fn write_to(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.check_id));
        std::fs::write(&path, self.to_json() + "\n")?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Runs `f` and stores its wall time in the report it returns.
pub(crate) fn timed(f: impl FnOnce() -> Result<VerificationReport>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}
