//! File-backed storage for analysis results.
//!
//! Each result lives in `<id>.json`; `index.json` lists ids with their
//! creation time. Writes go to a temporary file first and are renamed into
//! place, so readers never see a partial file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisResult;
use crate::{Error, Result};

const INDEX_FILE: &str = "index.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub id: String,
    pub title: Option<String>,
    /// Milliseconds since the Unix epoch.
    pub created_ms: u64,
    /// Insertion order, breaks ties between equal timestamps.
    pub seq: u64,
}

#[derive(Debug)]
pub struct AnalysisStore {
    dir: PathBuf,
    index_lock: Mutex<()>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("file");
    let tmp = dir.join(format!(
        ".{name}.{}.{}.tmp",
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

/// Ids are hex digests; anything else could escape the directory.
pub fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 128 && id.bytes().all(|b| b.is_ascii_hexdigit())
}

impl AnalysisStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(AnalysisStore {
            dir,
            index_lock: Mutex::new(()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    fn read_index(&self) -> Result<Vec<IndexEntry>> {
        let path = self.dir.join(INDEX_FILE);
        match fs::read_to_string(&path) {
            Ok(text) => Ok(serde_json::from_str(&text)?),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
            Err(e) => Err(Error::io(&path, e)),
        }
    }

    /// Stores `result` under its id. Storing the same id again replaces the
    /// file but keeps the original creation time.
    pub fn put(&self, result: &AnalysisResult) -> Result<IndexEntry> {
        if !valid_id(&result.id) {
            return Err(Error::Invalid(format!("bad analysis id {:?}", result.id)));
        }
        write_atomic(&self.path_for(&result.id), result.to_json()?.as_bytes())?;

        let _guard = self.index_lock.lock().unwrap_or_else(|p| p.into_inner());
        let mut index = self.read_index()?;
        if let Some(existing) = index.iter().find(|e| e.id == result.id) {
            return Ok(existing.clone());
        }
        let created_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        let entry = IndexEntry {
            id: result.id.clone(),
            title: result.document.title.clone(),
            created_ms,
            seq: index.iter().map(|e| e.seq + 1).max().unwrap_or(0),
        };
        index.push(entry.clone());
        write_atomic(&self.dir.join(INDEX_FILE), &serde_json::to_vec_pretty(&index)?)?;
        Ok(entry)
    }

    /// The stored JSON text, exactly as written.
    pub fn get_raw(&self, id: &str) -> Result<Option<String>> {
        if !valid_id(id) {
            return Ok(None);
        }
        let path = self.path_for(id);
        match fs::read_to_string(&path) {
            Ok(text) => Ok(Some(text)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::io(&path, e)),
        }
    }

    pub fn get(&self, id: &str) -> Result<Option<AnalysisResult>> {
        self.get_raw(id)?.map(|text| AnalysisResult::from_json(&text)).transpose()
    }

    /// Entries sorted by creation time, oldest first.
    pub fn list(&self) -> Result<Vec<IndexEntry>> {
        let _guard = self.index_lock.lock().unwrap_or_else(|p| p.into_inner());
        let mut index = self.read_index()?;
        index.sort_by_key(|e| (e.created_ms, e.seq));
        Ok(index)
    }
}
