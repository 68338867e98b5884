use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use healthlens_core::provenance::{event_to_jsonl, read_events_jsonl, ProvenanceError};
use healthlens_core::InteractionEvent;
use parking_lot::{Mutex, RwLock};
use serde::Serialize;

/// Process name that marks a click in the event log.
pub const CLICK_PROCESS: &str = "click on";

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("invalid event: {0}")]
    InvalidEvent(String),
    #[error("timestamp {found} ms precedes the session's last event at {previous} ms")]
    TimestampRegression { previous: u64, found: u64 },
    #[error("invalid session id `{0}`")]
    InvalidSessionId(String),
    #[error("session log {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("session log {path}: {source}")]
    Replay { path: PathBuf, source: ProvenanceError },
}

/// Click tallies for one document within a session.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClickCounts {
    pub terms: BTreeMap<String, u32>,
    pub images: BTreeMap<String, u32>,
}

#[derive(Debug, Default)]
pub struct SessionLog {
    events: Vec<InteractionEvent>,
    clicks: BTreeMap<String, ClickCounts>,
    file: Option<(PathBuf, File)>,
}

impl SessionLog {
    pub fn events(&self) -> &[InteractionEvent] {
        &self.events
    }

    pub fn clicks(&self, doc: &str) -> ClickCounts {
        self.clicks.get(doc).cloned().unwrap_or_default()
    }

    fn record(&mut self, event: InteractionEvent) {
        if event.process.as_str() == CLICK_PROCESS {
            if let Some(doc) = &event.doc {
                let counts = self.clicks.entry(doc.clone()).or_default();
                if let Some(term) = &event.term {
                    *counts.terms.entry(term.trim().to_lowercase()).or_insert(0) += 1;
                }
                if let Some(image) = &event.image {
                    *counts.images.entry(image.clone()).or_insert(0) += 1;
                }
            }
        }
        self.events.push(event);
    }
}

/// Append-only interaction logs, one per session. Writes to a session are
/// serialized by its own lock; different sessions proceed independently.
#[derive(Debug, Default)]
pub struct SessionStore {
    dir: Option<PathBuf>,
    sessions: RwLock<BTreeMap<String, Arc<Mutex<SessionLog>>>>,
}

pub fn valid_session_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 128 && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

impl SessionStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (creating if needed) a directory of `<session>.jsonl` logs and
    /// replays every existing log.
    pub fn open(dir: &Path) -> Result<Self, SessionError> {
        let io = |source| SessionError::Io { path: dir.to_owned(), source };
        std::fs::create_dir_all(dir).map_err(io)?;
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "jsonl"))
            .collect();
        paths.sort();
        let store = Self { dir: Some(dir.to_owned()), sessions: RwLock::default() };
        for path in paths {
            let Some(id) = path.file_stem().and_then(|s| s.to_str()).filter(|s| valid_session_id(s)) else { continue };
            let file = File::open(&path).map_err(|source| SessionError::Io { path: path.clone(), source })?;
            let events: Vec<InteractionEvent> =
                read_events_jsonl(BufReader::new(file)).map_err(|source| SessionError::Replay { path: path.clone(), source })?;
            let log = store.session(id)?;
            let mut log = log.lock();
            for event in events {
                log.record(event);
            }
        }
        Ok(store)
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<SessionLog>>, SessionError> {
        if !valid_session_id(id) {
            return Err(SessionError::InvalidSessionId(id.to_string()));
        }
        if let Some(log) = self.sessions.read().get(id) {
            return Ok(log.clone());
        }
        Ok(self.sessions.write().entry(id.to_string()).or_default().clone())
    }

    /// Validates and appends one event, returning the new log length.
    pub fn append(&self, id: &str, event: InteractionEvent) -> Result<usize, SessionError> {
        if event.session != id {
            return Err(SessionError::InvalidEvent(format!("event session `{}` does not match `{id}`", event.session)));
        }
        event.validate().map_err(SessionError::InvalidEvent)?;
        let log = self.session(id)?;
        let mut log = log.lock();
        if let Some(last) = log.events.last() {
            if event.ts_ms < last.ts_ms {
                return Err(SessionError::TimestampRegression { previous: last.ts_ms, found: event.ts_ms });
            }
        }
        if let Some(dir) = &self.dir {
            if log.file.is_none() {
                let path = dir.join(format!("{id}.jsonl"));
                let file = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(&path)
                    .map_err(|source| SessionError::Io { path: path.clone(), source })?;
                log.file = Some((path, file));
            }
            let (path, file) = log.file.as_mut().expect("opened above");
            let line = event_to_jsonl(&event);
            file.write_all(line.as_bytes())
                .and_then(|_| file.write_all(b"\n"))
                .and_then(|_| file.sync_data())
                .map_err(|source| SessionError::Io { path: path.clone(), source })?;
        }
        log.record(event);
        Ok(log.events.len())
    }

    /// Runs `f` on the session log, or on an empty log for unknown sessions.
    pub fn with_session<R>(&self, id: &str, f: impl FnOnce(&SessionLog) -> R) -> R {
        match self.sessions.read().get(id).cloned() {
            Some(log) => f(&log.lock()),
            None => f(&SessionLog::default()),
        }
    }

    pub fn session_ids(&self) -> Vec<String> {
        self.sessions.read().keys().cloned().collect()
    }
}
