//! Content-addressed on-disk store of `GL_n(F_q)` character tables.
//!
//! One JSON file per `(n, q, p, omega, e)`, named by the SHA-256 of the
//! canonical key. Writes go through a temporary file in the same directory
//! and a rename, so readers never observe a partial entry and concurrent
//! writers of the same key are idempotent.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use repcheck_core::chartab::{compute_gl_table, CharTableRecord, ModularCharTable, PrimeChoice, TableSource};
use repcheck_core::error::{Error as CoreError, Result as CoreResult};
use repcheck_core::groups::GroupSpec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever the entry layout changes; older entries are recomputed.
pub const CACHE_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    format: u32,
    key: String,
    record: CharTableRecord,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    /// Entries that existed but could not be used.
    pub discarded: u64,
}

pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
    discarded: AtomicU64,
}

/// Canonical key text; every field that changes the table is part of it.
pub fn canonical_key(n: usize, q: u32, prime: PrimeChoice) -> String {
    format!("gl-table/v{CACHE_FORMAT}/{}/p={}/omega={}/e={}", GroupSpec::gl(n, q), prime.p, prime.omega, prime.e)
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir, hits: AtomicU64::new(0), misses: AtomicU64::new(0), discarded: AtomicU64::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize, q: u32, prime: PrimeChoice) -> PathBuf {
        let digest = Sha256::digest(canonical_key(n, q, prime).as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            discarded: self.discarded.load(Ordering::Relaxed),
        }
    }

    fn load(&self, path: &Path, key: &str, spec: &GroupSpec) -> Option<ModularCharTable> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("cache entry {} unreadable ({e}); recomputing", path.display());
                self.discarded.fetch_add(1, Ordering::Relaxed);
                return None;
            }
        };
        let table = serde_json::from_slice::<Entry>(&bytes)
            .map_err(|e| e.to_string())
            .and_then(|entry| {
                if entry.format != CACHE_FORMAT || entry.key != key {
                    return Err(format!("stale entry (format {}, key {})", entry.format, entry.key));
                }
                let t = ModularCharTable::from_record(spec, &entry.record).map_err(|e| e.to_string())?;
                t.validate().map_err(|e| e.to_string())?;
                Ok(t)
            });
        match table {
            Ok(t) => Some(t),
            Err(why) => {
                log::warn!("cache entry {} discarded: {why}; recomputing", path.display());
                self.discarded.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn store(&self, path: &Path, key: &str, table: &ModularCharTable) -> std::io::Result<()> {
        let entry = Entry { format: CACHE_FORMAT, key: key.to_string(), record: table.to_record() };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.as_file_mut().flush()?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl TableSource for DiskCache {
    fn gl_table(&self, n: usize, q: u32, prime: PrimeChoice) -> CoreResult<Arc<ModularCharTable>> {
        let key = canonical_key(n, q, prime);
        let path = self.path_for(n, q, prime);
        let spec = GroupSpec::gl(n, q);
        if let Some(t) = self.load(&path, &key, &spec) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(Arc::new(t));
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let table = compute_gl_table(n, q, prime)?;
        if let Err(e) = self.store(&path, &key, &table) {
            // the result is still correct; only persistence failed
            log::warn!("could not write cache entry {}: {e}", path.display());
            if e.kind() == std::io::ErrorKind::PermissionDenied {
                return Err(CoreError::InvalidArgument(format!("cache directory not writable: {e}")));
            }
        }
        Ok(Arc::new(table))
    }
}
