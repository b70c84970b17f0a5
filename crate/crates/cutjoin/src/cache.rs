//! On-disk cache of computed levels.
//!
//! Layout under the cache root:
//!
//! ```text
//! alpha{α}-s{D}/manifest.json
//! alpha{α}-s{D}/level_{p}.poly
//! ```
//!
//! Each `.poly` file holds one level in canonical polynomial text followed by
//! a newline. The manifest records the format version, the family, the
//! `s`-degree cap, the highest stored level and, per level, the file name,
//! SHA-256 of its bytes and its term count. A manifest with another version,
//! or a file whose hash disagrees, makes the whole entry stale; it is then
//! recomputed. All writes go to a temporary file in the same directory that
//! is renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cutjoin_core::recursion::TauTable;
use cutjoin_core::{Alpha, GradedPoly};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "CUTJOIN_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache io error at {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cache manifest at {path} is malformed: {source}")]
    Manifest {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("refusing to cache level {level}: not homogeneous of degree {degree}")]
    Inhomogeneous { level: usize, degree: u32 },
    #[error(transparent)]
    Core(#[from] cutjoin_core::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEntry {
    pub level: usize,
    pub file: String,
    pub sha256: String,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub alpha: u8,
    pub s_degree_cap: u32,
    pub max_level: usize,
    pub levels: Vec<LevelEntry>,
}

/// Result of looking up one `(α, D)` entry.
#[derive(Debug)]
pub enum Lookup {
    Hit(TauTable),
    Miss,
    Stale(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn level_file(p: usize) -> String {
    format!("level_{p}.poly")
}

/// Writes `bytes` to `path` through a temporary sibling and a rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CacheError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(dir))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.as_file().sync_all().map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| CacheError::Io {
        path: path.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn entry_dir(&self, alpha: Alpha, s_degree_cap: u32) -> PathBuf {
        self.root
            .join(format!("alpha{}-s{}", alpha.value(), s_degree_cap))
    }

    pub fn manifest(
        &self,
        alpha: Alpha,
        s_degree_cap: u32,
    ) -> Result<Option<Manifest>, CacheError> {
        let path = self.entry_dir(alpha, s_degree_cap).join("manifest.json");
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CacheError::Io { path, source: e }),
        };
        serde_json::from_slice(&bytes)
            .map(Some)
            .map_err(|source| CacheError::Manifest { path, source })
    }

    /// Loads and verifies the entry for `(α, D)`.
    pub fn load(&self, alpha: Alpha, s_degree_cap: u32) -> Result<Lookup, CacheError> {
        let manifest = match self.manifest(alpha, s_degree_cap) {
            Ok(Some(m)) => m,
            Ok(None) => return Ok(Lookup::Miss),
            Err(CacheError::Manifest { source, .. }) => {
                return Ok(Lookup::Stale(source.to_string()))
            }
            Err(e) => return Err(e),
        };
        if manifest.version != CACHE_VERSION
            || manifest.alpha != alpha.value() as u8
            || manifest.s_degree_cap != s_degree_cap
            || manifest.levels.len() != manifest.max_level + 1
        {
            return Ok(Lookup::Stale(
                "manifest does not describe this entry".into(),
            ));
        }
        let dir = self.entry_dir(alpha, s_degree_cap);
        let mut levels = Vec::with_capacity(manifest.levels.len());
        for (p, entry) in manifest.levels.iter().enumerate() {
            if entry.level != p {
                return Ok(Lookup::Stale(format!("level {p} missing from manifest")));
            }
            let path = dir.join(&entry.file);
            let bytes = match fs::read(&path) {
                Ok(b) => b,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                    return Ok(Lookup::Stale(format!("{} missing", entry.file)))
                }
                Err(e) => return Err(CacheError::Io { path, source: e }),
            };
            if sha256_hex(&bytes) != entry.sha256 {
                return Ok(Lookup::Stale(format!("{} hash mismatch", entry.file)));
            }
            let text = String::from_utf8_lossy(&bytes);
            let poly: GradedPoly = match text.trim().parse() {
                Ok(p) => p,
                Err(e) => return Ok(Lookup::Stale(format!("{}: {e}", entry.file))),
            };
            levels.push(poly);
        }
        match TauTable::from_levels(alpha, s_degree_cap, levels) {
            Ok(t) => Ok(Lookup::Hit(t)),
            Err(e) => Ok(Lookup::Stale(e.to_string())),
        }
    }

    /// Writes every level of `table`, skipping files already present with
    /// the right hash, then the manifest.
    pub fn store(&self, table: &TauTable) -> Result<Manifest, CacheError> {
        let alpha = table.alpha();
        let dir = self.entry_dir(alpha, table.s_degree_cap());
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        let mut entries = Vec::new();
        for level in table.tau_levels() {
            if !level.is_homogeneous() {
                return Err(CacheError::Inhomogeneous {
                    level: level.level,
                    degree: level.degree(),
                });
            }
            let text = format!("{}\n", level.value);
            let hash = sha256_hex(text.as_bytes());
            let file = level_file(level.level);
            let path = dir.join(&file);
            let current = fs::read(&path).ok().map(|b| sha256_hex(&b));
            if current.as_deref() != Some(hash.as_str()) {
                write_atomic(&path, text.as_bytes())?;
            }
            entries.push(LevelEntry {
                level: level.level,
                file,
                sha256: hash,
                terms: level.value.len(),
            });
        }
        let manifest = Manifest {
            version: CACHE_VERSION,
            alpha: alpha.value() as u8,
            s_degree_cap: table.s_degree_cap(),
            max_level: table.max_level(),
            levels: entries,
        };
        let json = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
        write_atomic(&dir.join("manifest.json"), &json)?;
        Ok(manifest)
    }

    /// Levels `0..=P` at cap `D`, extending and rewriting the entry when it
    /// is short, stale or absent.
    pub fn ensure(
        &self,
        alpha: Alpha,
        max_level: usize,
        s_degree_cap: u32,
    ) -> Result<TauTable, CacheError> {
        let mut table = match self.load(alpha, s_degree_cap)? {
            Lookup::Hit(t) if t.max_level() >= max_level => return Ok(t),
            Lookup::Hit(t) => t,
            Lookup::Miss | Lookup::Stale(_) => TauTable::new(alpha, s_degree_cap),
        };
        table.extend_to(max_level)?;
        self.store(&table)?;
        Ok(table)
    }

    /// A stored table with at least `max_level` levels and cap at least
    /// `s_degree_cap`, restricted to that cap. Never writes.
    pub fn find_covering(
        &self,
        alpha: Alpha,
        max_level: usize,
        s_degree_cap: u32,
    ) -> Result<Option<TauTable>, CacheError> {
        let Ok(dir) = fs::read_dir(&self.root) else {
            return Ok(None);
        };
        let prefix = format!("alpha{}-s", alpha.value());
        let mut caps: Vec<u32> = dir
            .filter_map(|e| e.ok())
            .filter_map(|e| e.file_name().to_str()?.strip_prefix(&prefix)?.parse().ok())
            .filter(|&d| d >= s_degree_cap)
            .collect();
        caps.sort_unstable();
        for d in caps {
            if let Lookup::Hit(t) = self.load(alpha, d)? {
                if t.max_level() >= max_level {
                    return Ok(Some(t.restrict_s_degree(s_degree_cap)));
                }
            }
        }
        Ok(None)
    }
}
