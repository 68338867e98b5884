//! Counting metrics over a triple sequence.
//!
//! All counts are multiset counts over the sequence: a triple that occurs
//! three times contributes three to every metric it qualifies for.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::events::InteractionTriple;
use super::taxonomy::ToolId;
use super::ProvenanceError;
use crate::scalar::Scalar;

/// Triples whose source and target tool coincide.
pub fn count_loops<T: Scalar>(triples: &[InteractionTriple<T>]) -> usize {
    triples.iter().filter(|t| t.is_loop()).count()
}

fn pair_counts<T: Scalar>(triples: &[InteractionTriple<T>]) -> HashMap<(&ToolId, &ToolId), usize> {
    let mut counts = HashMap::new();
    for t in triples {
        *counts.entry((&t.src, &t.tar)).or_insert(0) += 1;
    }
    counts
}

/// Triples that share their `(src, tar)` pair with at least one other triple.
pub fn count_multiple_edges<T: Scalar>(triples: &[InteractionTriple<T>]) -> usize {
    pair_counts(triples).values().filter(|&&n| n >= 2).sum()
}

/// Triples equal to at least one other triple, and the number of distinct
/// such triples.
pub fn count_identical_triples<T: Scalar>(triples: &[InteractionTriple<T>]) -> (usize, usize) {
    let mut counts = HashMap::new();
    for t in triples {
        *counts.entry(t.key()).or_insert(0usize) += 1;
    }
    counts.values().filter(|&&n| n >= 2).fold((0, 0), |(total, distinct), &n| (total + n, distinct + 1))
}

/// Out-degree plus in-degree of `tool`; a loop counts once each way.
pub fn centrality<T: Scalar>(triples: &[InteractionTriple<T>], tool: &ToolId) -> usize {
    triples.iter().map(|t| usize::from(&t.src == tool) + usize::from(&t.tar == tool)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolCentrality {
    pub tool: ToolId,
    pub centrality: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceMetrics {
    pub total_triples: usize,
    pub loops: usize,
    pub multiple_edges: usize,
    pub identical_triples: usize,
    /// Distinct triples counted by `identical_triples`.
    pub distinct_identical_instances: usize,
    /// Distinct `(src, tar)` pairs counted by `multiple_edges`.
    pub distinct_tool_combinations: usize,
    /// Distinct tools appearing as source or target.
    pub tools_used: usize,
    /// Distinct tools with at least one loop.
    pub loop_tools: usize,
    /// Centrality per tool, highest first.
    pub per_tool_centrality: Vec<ToolCentrality>,
}

/// All metrics in one pass over the sequence.
pub fn compute_metrics<T: Scalar>(triples: &[InteractionTriple<T>]) -> ProvenanceMetrics {
    let pairs = pair_counts(triples);
    let (identical_triples, distinct_identical_instances) = count_identical_triples(triples);
    let mut degree: BTreeMap<ToolId, usize> = BTreeMap::new();
    let mut loop_tools = BTreeMap::new();
    for t in triples {
        *degree.entry(t.src).or_default() += 1;
        *degree.entry(t.tar).or_default() += 1;
        if t.is_loop() {
            loop_tools.insert(t.src, ());
        }
    }
    let mut per_tool_centrality: Vec<ToolCentrality> =
        degree.iter().map(|(tool, &centrality)| ToolCentrality { tool: *tool, centrality }).collect();
    per_tool_centrality.sort_by(|a, b| b.centrality.cmp(&a.centrality).then_with(|| a.tool.cmp(&b.tool)));

    ProvenanceMetrics {
        total_triples: triples.len(),
        loops: count_loops(triples),
        multiple_edges: pairs.values().filter(|&&n| n >= 2).sum(),
        identical_triples,
        distinct_identical_instances,
        distinct_tool_combinations: pairs.values().filter(|&&n| n >= 2).count(),
        tools_used: degree.len(),
        loop_tools: loop_tools.len(),
        per_tool_centrality,
    }
}

/// Maps every triple's tools through `tool_map`, preserving order and length.
pub fn coarsen<T: Scalar>(
    triples: &[InteractionTriple<T>],
    tool_map: &BTreeMap<ToolId, ToolId>,
) -> Result<Vec<InteractionTriple<T>>, ProvenanceError> {
    let map = |tool: &ToolId| tool_map.get(tool).copied().ok_or(ProvenanceError::UnmappedTool(*tool));
    triples
        .iter()
        .map(|t| Ok(InteractionTriple { src: map(&t.src)?, tar: map(&t.tar)?, ..t.clone() }))
        .collect()
}
