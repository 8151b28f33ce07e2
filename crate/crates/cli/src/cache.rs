//! On-disk cache of computed tables, one JSON file per entry, named by the
//! lowercase hex content hash of everything the entry depends on.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const FORMAT_VERSION: u32 = 1;
const TOOL: &str = "burchcx";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache directory {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("no cache entry with key {0}")]
    Missing(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryMeta {
    pub tool: String,
    pub format: u32,
    pub kind: String,
    pub key: String,
    pub description: String,
}

/// A cache file: a `meta` block like a report's, then the cached table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry<T> {
    pub meta: EntryMeta,
    pub payload: T,
}

/// One row of `cache list`.
#[derive(Clone, Debug, Serialize)]
pub struct Listing {
    pub key: String,
    pub kind: String,
    pub bytes: u64,
    pub description: String,
}

pub fn content_key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

fn is_key(name: &str) -> bool {
    name.len() == 64 && name.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
}

pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl DiskCache {
    pub fn open(dir: &Path) -> Result<Self, CacheError> {
        fs::create_dir_all(dir).map_err(|source| CacheError::Io { path: dir.to_path_buf(), source })?;
        Ok(Self { dir: dir.to_path_buf(), hits: AtomicUsize::new(0), misses: AtomicUsize::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Reads an entry; unreadable or corrupt files are reported and treated as absent.
    pub fn get<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                return None;
            }
        };
        match serde_json::from_str::<Entry<T>>(&text) {
            Ok(e) if e.meta.format == FORMAT_VERSION && e.meta.kind == kind && e.meta.key == key => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(e.payload)
            }
            Ok(_) => {
                eprintln!("warning: ignoring mismatched cache entry {}", path.display());
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
            Err(err) => {
                eprintln!("warning: ignoring corrupt cache entry {}: {err}", path.display());
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    /// Writes through a temporary file and a rename, so readers never see a partial entry.
    pub fn put<T: Serialize>(&self, kind: &str, key: &str, description: &str, payload: &T) -> Result<(), CacheError> {
        let meta = EntryMeta { tool: TOOL.into(), format: FORMAT_VERSION, kind: kind.into(), key: key.into(), description: description.into() };
        let entry = Entry { meta, payload };
        let text = serde_json::to_string(&entry).expect("cache payloads serialize");
        let io = |source| CacheError::Io { path: self.dir.clone(), source };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(self.path(key)).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn list(&self) -> Result<Vec<Listing>, CacheError> {
        let io = |source| CacheError::Io { path: self.dir.clone(), source };
        let mut out = Vec::new();
        for item in fs::read_dir(&self.dir).map_err(io)? {
            let item = item.map_err(io)?;
            let name = item.file_name().to_string_lossy().to_string();
            let Some(key) = name.strip_suffix(".json").filter(|k| is_key(k)) else { continue };
            let bytes = item.metadata().map_err(io)?.len();
            let (kind, description) = match fs::read_to_string(item.path()).ok().and_then(|t| serde_json::from_str::<Entry<serde_json::Value>>(&t).ok()) {
                Some(e) => (e.meta.kind, e.meta.description),
                None => ("corrupt".to_string(), String::new()),
            };
            out.push(Listing { key: key.to_string(), kind, bytes, description });
        }
        out.sort_by(|a, b| a.key.cmp(&b.key));
        Ok(out)
    }

    pub fn inspect(&self, key: &str) -> Result<String, CacheError> {
        let key = key.trim_end_matches(".json");
        let path = self.path(key);
        if !is_key(key) || !path.exists() {
            return Err(CacheError::Missing(key.to_string()));
        }
        fs::read_to_string(&path).map_err(|source| CacheError::Io { path, source })
    }

    /// Removes every entry file; returns how many were removed.
    pub fn clear(&self) -> Result<usize, CacheError> {
        let mut n = 0;
        for l in self.list()? {
            let path = self.path(&l.key);
            fs::remove_file(&path).map_err(|source| CacheError::Io { path, source })?;
            n += 1;
        }
        Ok(n)
    }
}
