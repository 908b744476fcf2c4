//! Run reports: a versioned JSON record per run, with CSV and table views
//! derived from it.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub weighted: bool,
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_weights: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_ids: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start_ids: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    /// `max` or `min`.
    pub sense: String,
    /// Exact ratio rounded half away from zero at `config.precision`.
    pub ratio: String,
    pub ratio_exact: String,
    pub set_size: usize,
    /// IPC iterations, envelope breakpoints or peeling passes.
    pub explored: usize,
    pub certified: Option<bool>,
    pub cut_solves: usize,
    pub wall_time_secs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<String>,
    /// Original ids of the reported set, ascending.
    pub set: Vec<u64>,
    pub config: ConfigEcho,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Top-level scalar fields in schema order, skipping the set and config.
    fn scalars(&self) -> Vec<(String, String)> {
        let Value::Object(map) = serde_json::to_value(self).expect("report serializes") else {
            unreachable!("report is a JSON object")
        };
        map.into_iter()
            .filter(|(k, _)| k != "set" && k != "config")
            .map(|(k, v)| {
                let s = match v {
                    Value::String(s) => s,
                    Value::Null => String::new(),
                    other => other.to_string(),
                };
                (k, s)
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let fields = self.scalars();
        let header: Vec<&str> = fields.iter().map(|f| f.0.as_str()).collect();
        let row: Vec<&str> = fields.iter().map(|f| f.1.as_str()).collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }

    pub fn to_table(&self) -> String {
        let fields = self.scalars();
        let width = fields.iter().map(|f| f.0.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in fields {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}
