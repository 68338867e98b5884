use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::events::InteractionTriple;
use super::taxonomy::ProcessId;
use crate::scalar::Scalar;

/// Processes as nodes (sized by total time) and switches between
/// consecutive triples as edges.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProcessGraph<T> {
    pub nodes: BTreeMap<ProcessId, T>,
    pub edges: BTreeMap<(ProcessId, ProcessId), u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct NodeJson<T> {
    process: ProcessId,
    duration_s: T,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: ProcessId,
    to: ProcessId,
    count: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct GraphJson<T> {
    nodes: Vec<NodeJson<T>>,
    edges: Vec<EdgeJson>,
}

impl<T: Scalar> Serialize for ProcessGraph<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            nodes: self.nodes.iter().map(|(p, d)| NodeJson { process: p.clone(), duration_s: *d }).collect(),
            edges: self.edges.iter().map(|((f, t), c)| EdgeJson { from: f.clone(), to: t.clone(), count: *c }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ProcessGraph<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let g = GraphJson::<T>::deserialize(deserializer)?;
        Ok(Self {
            nodes: g.nodes.into_iter().map(|n| (n.process, n.duration_s)).collect(),
            edges: g.edges.into_iter().map(|e| ((e.from, e.to), e.count)).collect(),
        })
    }
}

impl<T: Scalar> ProcessGraph<T> {
    pub fn total_duration(&self) -> T {
        self.nodes.values().copied().sum()
    }

    /// Graphviz rendering; node width scales with the square root of time
    /// share so that area is proportional to it, pen width with edge count.
    pub fn to_dot(&self) -> String {
        let total = self.total_duration().to_f64_lossy().max(f64::MIN_POSITIVE);
        let max_count = self.edges.values().copied().max().unwrap_or(1).max(1) as f64;
        let mut out = String::from("digraph provenance {\n  node [shape=circle, fixedsize=true];\n");
        for (process, duration) in &self.nodes {
            let d = duration.to_f64_lossy();
            let width = 0.3 + 2.0 * (d / total).sqrt();
            let _ = writeln!(out, "  \"{}\" [width={width:.3}, label=\"{}\\n{d:.1}s\"];", process, process);
        }
        for ((from, to), count) in &self.edges {
            let pen = 1.0 + 4.0 * (*count as f64) / max_count;
            let _ = writeln!(out, "  \"{from}\" -> \"{to}\" [penwidth={pen:.2}, label=\"{count}\"];");
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_process_graph<T: Scalar>(triples: &[InteractionTriple<T>]) -> ProcessGraph<T> {
    let mut graph = ProcessGraph { nodes: BTreeMap::new(), edges: BTreeMap::new() };
    for t in triples {
        let slot = graph.nodes.entry(t.process.clone()).or_insert_with(T::zero);
        *slot = *slot + t.duration_s;
    }
    for pair in triples.windows(2) {
        *graph.edges.entry((pair[0].process.clone(), pair[1].process.clone())).or_insert(0) += 1;
    }
    graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::provenance::{ToolId, ToolKind};

    fn seq(processes: &[(&str, f64)]) -> Vec<InteractionTriple<f64>> {
        let tool = ToolId::global(ToolKind::Toc);
        processes.iter().map(|&(p, d)| InteractionTriple::new(tool, p, tool, d)).collect()
    }

    #[test]
    fn single_triple() {
        let g = build_process_graph(&seq(&[("reading", 3.0)]));
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn consecutive_pairs() {
        let g = build_process_graph(&seq(&[("p", 1.0), ("q", 2.0), ("p", 4.0)]));
        assert_eq!(g.nodes[&ProcessId::new("p")], 5.0);
        assert_eq!(g.edges[&(ProcessId::new("p"), ProcessId::new("q"))], 1);
        assert_eq!(g.edges[&(ProcessId::new("q"), ProcessId::new("p"))], 1);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.total_duration(), 7.0);
    }

    #[test]
    fn self_edges_recorded() {
        let g = build_process_graph(&seq(&[("p", 1.0), ("p", 1.0)]));
        assert_eq!(g.edges[&(ProcessId::new("p"), ProcessId::new("p"))], 1);
    }

    #[test]
    fn json_and_dot() {
        let g = build_process_graph(&seq(&[("p", 1.0), ("q", 2.0)]));
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"nodes":[{"process":"p","duration_s":1.0},{"process":"q","duration_s":2.0}],"edges":[{"from":"p","to":"q","count":1}]}"#);
        assert_eq!(serde_json::from_str::<ProcessGraph<f64>>(&json).unwrap(), g);
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"p\" -> \"q\""));
    }
}
