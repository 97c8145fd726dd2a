//! Envelope cache files.
//!
//! JSON document, schema version 1:
//!
//! ```text
//! { "format": "ccd-envelope", "version": 1, "dim": 2, "replicates": 99,
//!   "seed": 1, "min_points": 3, "t_grid": [...],
//!   "upper": [ { "m": 3, "values": [...] }, ... ] }
//! ```
//!
//! Floats are written with round-trip precision, so a table read back is
//! bit-identical to the one written.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ccd_core::spatial::{uniform_grid, BALL_T_MAX, DEFAULT_GRID_LEN};
use ccd_core::EnvelopeTable;
use serde::{Deserialize, Serialize};

use crate::csvio::write_file;
use crate::error::{CliError, Result};

pub const FORMAT: &str = "ccd-envelope";
pub const VERSION: u32 = 1;
/// Overrides the directory used for envelope caches.
pub const CACHE_DIR_ENV: &str = "CCD_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    m: usize,
    values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    dim: usize,
    replicates: usize,
    seed: u64,
    min_points: usize,
    t_grid: Vec<f64>,
    upper: Vec<Entry>,
}

/// What [`load_or_build`] had to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    /// The file already covered the request and was left untouched.
    Reused,
    /// Missing sizes were added and the file rewritten.
    Extended,
    /// No file existed; it was created.
    Built,
}

pub fn default_path(dir: &Path, dim: usize, replicates: usize, seed: u64) -> PathBuf {
    dir.join(format!("envelope-d{dim}-n{replicates}-s{seed}.json"))
}

/// Directory named by `CCD_CACHE_DIR`, else `.ccd-cache` in the working directory.
pub fn default_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".ccd-cache"))
}

pub fn to_json(table: &EnvelopeTable) -> String {
    let file = CacheFile {
        format: FORMAT.into(),
        version: VERSION,
        dim: table.dim(),
        replicates: table.replicates(),
        seed: table.seed(),
        min_points: table.min_points(),
        t_grid: table.t_grid().to_vec(),
        upper: table
            .entries()
            .map(|(m, v)| Entry { m, values: v.to_vec() })
            .collect(),
    };
    let mut s = serde_json::to_string(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str, path: &Path) -> Result<EnvelopeTable> {
    let bad = |message: String| CliError::Format {
        path: path.to_path_buf(),
        message,
    };
    let file: CacheFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line() as u64,
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.format != FORMAT {
        return Err(bad(format!("not an envelope cache (format {:?})", file.format)));
    }
    if file.version != VERSION {
        return Err(bad(format!("unsupported cache version {}", file.version)));
    }
    let mut upper = BTreeMap::new();
    for e in file.upper {
        if upper.insert(e.m, e.values).is_some() {
            return Err(bad(format!("duplicate envelope for m = {}", e.m)));
        }
    }
    EnvelopeTable::from_parts(file.dim, file.replicates, file.seed, file.t_grid, file.min_points, upper)
        .map_err(|e| bad(e.to_string()))
}

pub fn load(path: &Path) -> Result<EnvelopeTable> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    from_json(&text, path)
}

pub fn save(path: &Path, table: &EnvelopeTable) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    write_file(path, to_json(table).as_bytes())
}

/// Table for `(dim, replicates, seed)` covering sizes up to `m_max`, read
/// from `path` when possible and written back only if something was added.
pub fn load_or_build(
    path: &Path,
    dim: usize,
    replicates: usize,
    seed: u64,
    m_max: usize,
) -> Result<(EnvelopeTable, CacheStatus)> {
    if path.exists() {
        let mut table = load(path)?;
        let grid = uniform_grid(BALL_T_MAX, DEFAULT_GRID_LEN);
        if table.dim() != dim || table.replicates() != replicates || table.seed() != seed || table.t_grid() != grid {
            return Err(CliError::Usage(format!(
                "{}: cache holds d={}, N={}, seed={}; requested d={dim}, N={replicates}, seed={seed}",
                path.display(),
                table.dim(),
                table.replicates(),
                table.seed()
            )));
        }
        if table.covers_up_to(m_max) {
            return Ok((table, CacheStatus::Reused));
        }
        table.ensure(m_max);
        save(path, &table)?;
        return Ok((table, CacheStatus::Extended));
    }
    let table = EnvelopeTable::build(dim, m_max, replicates, seed)?;
    save(path, &table)?;
    Ok((table, CacheStatus::Built))
}
