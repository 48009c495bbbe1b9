//! The on-disk store: one JSON document replaced atomically on every save.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cryptolexia_core::game::{ChallengeBank, GameState, Session};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::settings::PlayerSettings;

pub const STORE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionRecord {
    pub token: String,
    pub session: Session,
}

/// Everything the service persists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoreDocument {
    pub version: u32,
    pub sessions: Vec<SessionRecord>,
    pub settings: BTreeMap<String, PlayerSettings>,
    pub solve_ordinal: u64,
}

impl Default for StoreDocument {
    fn default() -> Self {
        StoreDocument {
            version: STORE_VERSION,
            sessions: Vec::new(),
            settings: BTreeMap::new(),
            solve_ordinal: 0,
        }
    }
}

impl StoreDocument {
    /// The game state held in this document.
    pub fn game_state(&self) -> GameState {
        GameState {
            sessions: self
                .sessions
                .iter()
                .map(|r| (r.session.handle.clone(), r.session.clone()))
                .collect(),
            solve_ordinal: self.solve_ordinal,
        }
    }

    /// Check the document against the bank it will be served with.
    pub fn check(&self, bank: &ChallengeBank) -> Result<(), String> {
        let mut tokens = HashSet::new();
        let mut handles = HashSet::new();
        for record in &self.sessions {
            if !is_token(&record.token) {
                return Err(format!("{}: malformed session token", record.session.handle));
            }
            if !tokens.insert(record.token.as_str()) {
                return Err(format!("{}: session token reused", record.session.handle));
            }
            if !handles.insert(record.session.handle.as_str()) {
                return Err(format!("{}: nickname stored twice", record.session.handle));
            }
        }
        if let Some(orphan) = self.settings.keys().find(|h| !handles.contains(h.as_str())) {
            return Err(format!("settings stored for unknown player {orphan:?}"));
        }
        self.game_state().check(bank)
    }
}

/// 128 bits as 32 lowercase hex digits.
pub fn is_token(s: &str) -> bool {
    s.len() == 32 && s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'))
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("cannot read store {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("store {path} is corrupt: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("store {path} has schema version {found}, this build reads version {expected}; migrate the file before starting")]
    Version { path: PathBuf, found: u64, expected: u32 },
    #[error("store {path} is inconsistent with the challenge bank: {reason}")]
    Invalid { path: PathBuf, reason: String },
}

/// Read and verify a store. A missing file is an empty store.
pub fn load(path: &Path, bank: &ChallengeBank) -> Result<StoreDocument, StoreError> {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(StoreDocument::default()),
        Err(source) => {
            return Err(StoreError::Io {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let corrupt = |reason: String| StoreError::Corrupt {
        path: path.to_path_buf(),
        reason,
    };
    let value: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
    let found = value
        .get("version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| corrupt("missing schema version".into()))?;
    if found != STORE_VERSION as u64 {
        return Err(StoreError::Version {
            path: path.to_path_buf(),
            found,
            expected: STORE_VERSION,
        });
    }
    let doc: StoreDocument = serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))?;
    doc.check(bank).map_err(|reason| StoreError::Invalid {
        path: path.to_path_buf(),
        reason,
    })?;
    Ok(doc)
}

/// Points in [`save_with`] where a fault hook is consulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaveStage {
    /// The temporary file exists but nothing is written yet.
    Created,
    /// This many bytes of the document have reached the temporary file.
    Wrote(usize),
    /// The temporary file is complete and synced.
    Synced,
    /// The temporary file has replaced the store.
    Renamed,
}

/// What a fault hook asks [`save_with`] to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    Continue,
    /// Stop here as if the process died: no cleanup.
    Crash,
}

const CHUNK: usize = 256;

pub fn save(path: &Path, doc: &StoreDocument) -> io::Result<()> {
    save_with(path, doc, |_| Fault::Continue)
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_else(|| "store".into());
    name.push(".tmp");
    path.with_file_name(name)
}

/// Write the document to a sibling temporary file, sync it, then rename it
/// over `path`. A reader sees either the old document or the new one.
pub fn save_with(
    path: &Path,
    doc: &StoreDocument,
    mut hook: impl FnMut(SaveStage) -> Fault,
) -> io::Result<()> {
    let bytes = serde_json::to_vec_pretty(doc).map_err(io::Error::other)?;
    let tmp = temp_path(path);
    let crashed = std::cell::Cell::new(false);
    let mut check = |stage| match hook(stage) {
        Fault::Continue => Ok(()),
        Fault::Crash => {
            crashed.set(true);
            Err(io::Error::other("simulated crash"))
        }
    };

    let result = (|| {
        let mut file = fs::File::create(&tmp)?;
        check(SaveStage::Created)?;
        let mut written = 0;
        for chunk in bytes.chunks(CHUNK) {
            file.write_all(chunk)?;
            written += chunk.len();
            check(SaveStage::Wrote(written))?;
        }
        file.sync_all()?;
        check(SaveStage::Synced)?;
        fs::rename(&tmp, path)?;
        sync_parent(path);
        check(SaveStage::Renamed)
    })();

    if result.is_err() && !crashed.get() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

#[cfg(unix)]
fn sync_parent(path: &Path) {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        if let Ok(d) = fs::File::open(dir) {
            let _ = d.sync_all();
        }
    }
}

#[cfg(not(unix))]
fn sync_parent(_path: &Path) {}
