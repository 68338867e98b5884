//! Batch analytics over session logs.

use std::io::BufRead;

use healthlens_core::provenance::{
    build_matrix_view, build_process_graph, compute_metrics, derive_session_triples, read_events_jsonl, read_triples_jsonl,
    ProvenanceError, ProvenanceMetrics, Taxonomy,
};
use healthlens_core::{InteractionEvent, InteractionTriple, MatrixView, ProcessGraph};

/// What each line of a log holds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LogKind {
    /// Interaction events; triples are derived per session.
    #[default]
    Events,
    /// Already-coded `{tool_src, process, tool_tar}` triples.
    Triples,
}

pub fn read_triples<R: BufRead>(reader: R, kind: LogKind, min_duration_s: f64) -> Result<Vec<InteractionTriple>, ProvenanceError> {
    match kind {
        LogKind::Events => {
            let events: Vec<InteractionEvent> = read_events_jsonl(reader)?;
            derive_session_triples(&events, min_duration_s)
        }
        LogKind::Triples => read_triples_jsonl(reader),
    }
}

pub fn analyze_log<R: BufRead>(reader: R, kind: LogKind, min_duration_s: f64) -> Result<ProvenanceMetrics, ProvenanceError> {
    Ok(compute_metrics(&read_triples(reader, kind, min_duration_s)?))
}

/// Pretty JSON with a trailing newline; stable for identical input.
pub fn to_pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

pub fn process_graph<R: BufRead>(reader: R, kind: LogKind, min_duration_s: f64) -> Result<ProcessGraph, ProvenanceError> {
    Ok(build_process_graph(&read_triples(reader, kind, min_duration_s)?))
}

pub fn matrix_view<R: BufRead>(
    reader: R,
    kind: LogKind,
    min_duration_s: f64,
    taxonomy: &Taxonomy,
    max_visible: usize,
) -> Result<MatrixView, ProvenanceError> {
    Ok(build_matrix_view(&read_triples(reader, kind, min_duration_s)?, taxonomy, max_visible))
}
