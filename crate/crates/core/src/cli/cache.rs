//! Persistent per-level records keyed by the spec digest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::tower::TowerSpec;
use crate::zeta::ZetaLevel;

const RECORD_SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
struct StoredLevel {
    schema_version: u32,
    spec_digest: String,
    n: u32,
    record_digest: String,
    compute_ms: u64,
    record: ZetaLevel,
}

/// Outcome of a lookup.
#[derive(Debug, PartialEq)]
pub enum Lookup {
    Hit(Box<ZetaLevel>),
    Miss,
    /// A file existed but failed verification; it will be overwritten.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct LevelCache {
    dir: Option<PathBuf>,
}

fn record_digest(level: &ZetaLevel) -> Result<String> {
    let canon = serde_json::to_string(level)?;
    Ok(hex::encode(Sha256::digest(canon.as_bytes())))
}

impl LevelCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        LevelCache { dir }
    }

    pub fn disabled() -> Self {
        LevelCache { dir: None }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn path(&self, spec: &TowerSpec, n: u32) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join("levels").join(spec.digest()).join(format!("level_{n}.json")))
    }

    pub fn lookup(&self, spec: &TowerSpec, n: u32) -> Lookup {
        let Some(path) = self.path(spec, n) else { return Lookup::Miss };
        let Ok(bytes) = fs::read(&path) else { return Lookup::Miss };
        let stored: StoredLevel = match serde_json::from_slice(&bytes) {
            Ok(s) => s,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        if stored.schema_version != RECORD_SCHEMA || stored.spec_digest != spec.digest() || stored.n != n {
            return Lookup::Corrupt(format!("{}: header mismatch", path.display()));
        }
        match record_digest(&stored.record) {
            Ok(d) if d == stored.record_digest => Lookup::Hit(Box::new(stored.record)),
            _ => Lookup::Corrupt(format!("{}: record digest mismatch", path.display())),
        }
    }

    pub fn store(&self, spec: &TowerSpec, level: &ZetaLevel, compute_ms: u64) -> Result<()> {
        let Some(path) = self.path(spec, level.n) else { return Ok(()) };
        let stored = StoredLevel {
            schema_version: RECORD_SCHEMA,
            spec_digest: spec.digest(),
            n: level.n,
            record_digest: record_digest(level)?,
            compute_ms,
            record: level.clone(),
        };
        write_atomic(&path, serde_json::to_string_pretty(&stored)?.as_bytes())
    }
}

/// Write through a sibling temp file and rename into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
