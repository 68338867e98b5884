//! HTTP service, session persistence and command-line tooling around
//! `healthlens-core`.

pub mod analyze;
pub mod api;
pub mod cli;
pub mod config;
pub mod library;
pub mod sessions;

pub use api::{router, AppState};
pub use config::ServiceConfig;
pub use library::LibraryStore;
pub use sessions::SessionStore;
