//! Interaction provenance: event logs, ⟨tool_src, process, tool_tar⟩
//! triples, counting metrics, the process graph and the provenance matrix.

mod events;
mod graph;
mod matrix;
mod metrics;
mod taxonomy;

pub use events::{
    derive_session_triples, derive_triples, event_to_jsonl, read_events_jsonl, read_triples_jsonl, InteractionEvent, InteractionTriple,
    DEFAULT_MIN_DURATION_S,
};
pub use graph::{build_process_graph, ProcessGraph};
pub use matrix::{
    build_matrix_view, transition_matrix, FeasibilityMask, MaskViolation, MatrixCell, MatrixTransition, MatrixView, TransitionMatrix,
};
pub use metrics::{
    centrality, coarsen, compute_metrics, count_identical_triples, count_loops, count_multiple_edges, ProvenanceMetrics, ToolCentrality,
};
pub use taxonomy::{ProcessCategory, DEFAULT_TAXONOMY_TOML, ProcessId, ProcessSpec, Taxonomy, ToolId, ToolKind, ToolSpec};

#[derive(Debug, thiserror::Error)]
pub enum ProvenanceError {
    #[error("event {index} has timestamp {found} ms, earlier than the previous {previous} ms")]
    UnorderedEvents { index: usize, previous: u64, found: u64 },
    #[error("tool {0} has no entry in the tool map")]
    UnmappedTool(ToolId),
    #[error("invalid event on line {line}: {reason}")]
    InvalidEvent { line: usize, reason: String },
    #[error("invalid taxonomy: {0}")]
    InvalidTaxonomy(String),
    #[error("invalid tool: {0}")]
    InvalidTool(String),
}
