use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::cache::CacheStats;

pub const VERSION: &str = concat!("repcheck/", env!("CARGO_PKG_VERSION"), "/report-v1");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Canonical payload: deterministic for fixed parameters and version.
/// Object keys serialize in sorted order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub params: Map<String, Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_multiplicity: Option<u64>,
    /// Present on every fail verdict; enough to re-check the failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub version: String,
}

/// Non-canonical run data kept beside the report.
#[derive(Clone, Debug, Serialize)]
pub struct Sidecar {
    pub wall_time_secs: f64,
    pub cache: Option<CacheStats>,
    /// Supporting evidence for the verdict (full matrices, orbit counts).
    pub details: Value,
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    out.with_file_name(name)
}

/// Writes `value` as pretty JSON through a temporary file and a rename.
pub fn write_json_atomic(path: &Path, value: &impl Serialize) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    serde_json::to_writer_pretty(&mut tmp, value)?;
    tmp.write_all(b"\n")?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
