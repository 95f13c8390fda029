//! Persistent count cache: one JSON record per line.
//!
//! Writers take an exclusive lock on a sibling lock file, so appends and
//! compactions from concurrent processes never interleave. Compaction writes
//! the deduplicated records to a temporary file and renames it over the
//! original; readers never see a half-written cache.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::enumeration::CountTriple;
use crate::error::Result;
use crate::perm::Permutation;
use crate::shape::FerrersShape;
use crate::TOOL_VERSION;

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "EVENWILF_CACHE_DIR";

const FILE_NAME: &str = "counts.jsonl";
const LOCK_NAME: &str = "counts.lock";

/// Compact once the file holds this many more lines than distinct keys.
const COMPACT_SLACK: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub value: CountTriple,
    pub tool_version: String,
    pub timestamp: u64,
}

pub fn perm_key(pattern: &Permutation, n: usize) -> String {
    format!("perm:{pattern}:{n}")
}

pub fn shape_key(pattern: &Permutation, shape: &FerrersShape) -> String {
    format!("shape:{pattern}:{shape}")
}

/// Cache directory from the environment, else `<data dir>/evenwilf`.
pub fn default_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => dirs::data_dir()
            .unwrap_or_else(std::env::temp_dir)
            .join("evenwilf"),
    }
}

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    lock_path: PathBuf,
    entries: BTreeMap<String, CountTriple>,
    lines: usize,
    pending: Vec<CacheRecord>,
}

impl CountCache {
    /// Opens (creating the directory if needed) and loads every record.
    /// Unparseable lines are skipped and dropped at the next compaction.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let mut cache = CountCache {
            path: dir.join(FILE_NAME),
            lock_path: dir.join(LOCK_NAME),
            entries: BTreeMap::new(),
            lines: 0,
            pending: Vec::new(),
        };
        cache.reload()?;
        Ok(cache)
    }

    fn reload(&mut self) -> Result<()> {
        self.entries.clear();
        self.lines = 0;
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(()),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            self.lines += 1;
            if let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) {
                if rec.value.is_consistent() {
                    self.entries.insert(rec.key, rec.value);
                }
            }
        }
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<CountTriple> {
        self.entries.get(key).copied()
    }

    /// Stages a record; nothing is written until [`CountCache::flush`].
    pub fn put(&mut self, key: String, value: CountTriple) {
        if self.entries.get(&key) == Some(&value) {
            return;
        }
        self.entries.insert(key.clone(), value);
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        self.pending.push(CacheRecord {
            key,
            value,
            tool_version: TOOL_VERSION.to_string(),
            timestamp,
        });
    }

    fn lock(&self) -> Result<File> {
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&self.lock_path)?;
        file.lock()?;
        Ok(file)
    }

    /// Appends staged records under the lock, compacting when the file has
    /// accumulated many superseded lines.
    pub fn flush(&mut self) -> Result<()> {
        if self.pending.is_empty() {
            return Ok(());
        }
        let lock = self.lock()?;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let mut buf = Vec::new();
        for rec in &self.pending {
            serde_json::to_writer(&mut buf, rec)?;
            buf.push(b'\n');
        }
        file.write_all(&buf)?;
        file.flush()?;
        self.lines += self.pending.len();
        self.pending.clear();
        if self.lines > self.entries.len() + COMPACT_SLACK {
            self.compact_locked()?;
        }
        lock.unlock()?;
        Ok(())
    }

    /// Rewrites the file with one line per key.
    pub fn compact(&mut self) -> Result<()> {
        self.flush()?;
        let lock = self.lock()?;
        let result = self.compact_locked();
        lock.unlock()?;
        result
    }

    /// Caller holds the lock.
    fn compact_locked(&mut self) -> Result<()> {
        // Pick up records appended by other processes since we loaded.
        let ours = std::mem::take(&mut self.entries);
        self.reload()?;
        self.entries.extend(ours);
        let tmp = self
            .path
            .with_extension(format!("jsonl.{}.tmp", std::process::id()));
        {
            let mut out = File::create(&tmp)?;
            let timestamp = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            let mut buf = Vec::new();
            for (key, value) in &self.entries {
                let rec = CacheRecord {
                    key: key.clone(),
                    value: *value,
                    tool_version: TOOL_VERSION.to_string(),
                    timestamp,
                };
                serde_json::to_writer(&mut buf, &rec)?;
                buf.push(b'\n');
            }
            out.write_all(&buf)?;
            out.sync_all()?;
        }
        fs::rename(&tmp, &self.path)?;
        self.lines = self.entries.len();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_compaction() {
        let dir = std::env::temp_dir().join(format!("evenwilf-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let p: Permutation = "1234".parse().unwrap();
        {
            let mut c = CountCache::open(&dir).unwrap();
            assert!(c.is_empty());
            c.put(perm_key(&p, 6), CountTriple::new(258, 255));
            c.put(perm_key(&p, 6), CountTriple::new(258, 255));
            c.flush().unwrap();
        }
        let mut c = CountCache::open(&dir).unwrap();
        assert_eq!(c.get(&perm_key(&p, 6)), Some(CountTriple::new(258, 255)));
        assert_eq!(c.lines, 1);
        c.put(perm_key(&p, 6), CountTriple::new(1, 1));
        c.flush().unwrap();
        assert_eq!(c.lines, 2);
        c.compact().unwrap();
        let c = CountCache::open(&dir).unwrap();
        assert_eq!(c.lines, 1);
        assert_eq!(c.get(&perm_key(&p, 6)), Some(CountTriple::new(1, 1)));

        fs::write(c.path(), "garbage\n").unwrap();
        let c = CountCache::open(&dir).unwrap();
        assert!(c.is_empty());
        fs::remove_dir_all(&dir).unwrap();
    }
}
