//! Service configuration.
//!
//! Values are resolved in increasing priority: built-in defaults, the TOML
//! file given by `--config`, `HEALTHLENS_*` environment variables, then
//! command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const ENV_PREFIX: &str = "HEALTHLENS_";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    /// Directory of document JSON files.
    pub library: PathBuf,
    /// Directory for per-session JSONL logs; in-memory only when unset.
    pub sessions: Option<PathBuf>,
    pub port: u16,
    /// Seed for topic models and word cloud layouts.
    pub seed: u64,
    pub topics: usize,
    pub iterations: usize,
    pub terms_per_topic: usize,
    pub chunk_size: usize,
    pub canvas_width: f64,
    pub canvas_height: f64,
    pub min_duration_s: f64,
    pub max_visible_transitions: usize,
    pub image_page_size: usize,
    /// Optional replacement for the bundled tool/process taxonomy.
    pub taxonomy: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            library: PathBuf::from("library"),
            sessions: None,
            port: 8080,
            seed: 0,
            topics: 5,
            iterations: 500,
            terms_per_topic: healthlens_core::views::DEFAULT_TERMS_PER_TOPIC,
            chunk_size: healthlens_core::corpus::DEFAULT_CHUNK_SIZE,
            canvas_width: 640.0,
            canvas_height: 400.0,
            min_duration_s: healthlens_core::provenance::DEFAULT_MIN_DURATION_S,
            max_visible_transitions: 10,
            image_page_size: 5,
            taxonomy: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid value for {key}: `{value}`")]
    Env { key: String, value: String },
}

impl ServiceConfig {
    pub fn from_toml(source: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(source)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_owned(), source })?;
        Self::from_toml(&text).map_err(|e| ConfigError::Parse { path: path.to_owned(), message: e.to_string() })
    }

    /// Applies `HEALTHLENS_<FIELD>` overrides from `vars`.
    pub fn apply_env<I>(&mut self, vars: I) -> Result<(), ConfigError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        for (key, value) in vars {
            let Some(field) = key.strip_prefix(ENV_PREFIX) else { continue };
            let bad = || ConfigError::Env { key: key.clone(), value: value.clone() };
            match field.to_ascii_lowercase().as_str() {
                "library" => self.library = PathBuf::from(&value),
                "sessions" => self.sessions = Some(PathBuf::from(&value)),
                "taxonomy" => self.taxonomy = Some(PathBuf::from(&value)),
                "port" => self.port = value.parse().map_err(|_| bad())?,
                "seed" => self.seed = value.parse().map_err(|_| bad())?,
                "topics" => self.topics = value.parse().map_err(|_| bad())?,
                "iterations" => self.iterations = value.parse().map_err(|_| bad())?,
                "terms_per_topic" => self.terms_per_topic = value.parse().map_err(|_| bad())?,
                "chunk_size" => self.chunk_size = value.parse().map_err(|_| bad())?,
                "canvas_width" => self.canvas_width = value.parse().map_err(|_| bad())?,
                "canvas_height" => self.canvas_height = value.parse().map_err(|_| bad())?,
                "min_duration_s" => self.min_duration_s = value.parse().map_err(|_| bad())?,
                "max_visible_transitions" => self.max_visible_transitions = value.parse().map_err(|_| bad())?,
                "image_page_size" => self.image_page_size = value.parse().map_err(|_| bad())?,
                _ => {}
            }
        }
        Ok(())
    }
}
