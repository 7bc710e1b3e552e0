use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub elapsed_ms: u64,
    pub payload: Value,
    pub discrepancies: Vec<String>,
}

impl Report {
    pub fn new(command: String, payload: Value, discrepancies: Vec<String>, elapsed_ms: u64) -> Self {
        Self { command, version: env!("CARGO_PKG_VERSION").to_string(), elapsed_ms, payload, discrepancies }
    }

    pub fn exit_code(&self) -> i32 {
        if self.discrepancies.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Machine => serde_json::to_string(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = String::new();
                writeln!(out, "# {} (multicross {}, {} ms)", self.command, self.version, self.elapsed_ms).unwrap();
                render(&mut out, &self.payload, 0);
                if self.discrepancies.is_empty() {
                    out.push_str("discrepancies: none\n");
                } else {
                    writeln!(out, "discrepancies: {}", self.discrepancies.len()).unwrap();
                    for d in &self.discrepancies {
                        writeln!(out, "  - {d}").unwrap();
                    }
                }
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Integer keys in numeric order ahead of all other keys.
fn key_order(k: &str) -> (bool, i64, &str) {
    match k.parse::<i64>() {
        Ok(v) => (false, v, k),
        Err(_) => (true, 0, k),
    }
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(&String, &Value)> = map.iter().collect();
            entries.sort_by_key(|(k, _)| key_order(k));
            for (k, item) in entries {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render(out, item, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None if item.is_array() => {
                        // Nested arrays such as diagram edges stay on one line.
                        writeln!(out, "{pad}- {item}").unwrap();
                    }
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        render(out, item, indent + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

/// Finished shards of a long enumeration, saved after each one so a rerun resumes.
pub struct Checkpoint {
    path: Option<PathBuf>,
    shards: BTreeMap<String, Value>,
}

impl Checkpoint {
    pub fn open(path: Option<&Path>, job: &str) -> anyhow::Result<Self> {
        let Some(path) = path else { return Ok(Self { path: None, shards: BTreeMap::new() }) };
        let mut shards = BTreeMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let saved: SavedCheckpoint =
                serde_json::from_str(&text).with_context(|| format!("parsing checkpoint {}", path.display()))?;
            anyhow::ensure!(saved.job == job, "checkpoint {} belongs to `{}`, not `{job}`", path.display(), saved.job);
            shards = saved.shards;
        }
        Ok(Self { path: Some(path.to_path_buf()), shards })
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        self.shards.get(key).and_then(|v| serde_json::from_value(v.clone()).ok())
    }

    pub fn len(&self) -> usize {
        self.shards.len()
    }

    pub fn put<T: Serialize>(&mut self, job: &str, key: &str, value: &T) -> anyhow::Result<()> {
        self.shards.insert(key.to_string(), serde_json::to_value(value)?);
        let Some(path) = &self.path else { return Ok(()) };
        let saved = SavedCheckpoint { job: job.to_string(), shards: self.shards.clone() };
        let tmp = path.with_extension("partial");
        std::fs::write(&tmp, serde_json::to_string(&saved)?).with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SavedCheckpoint {
    job: String,
    shards: BTreeMap<String, Value>,
}
