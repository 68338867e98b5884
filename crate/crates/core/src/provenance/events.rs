use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::taxonomy::{ProcessId, ToolId};
use super::ProvenanceError;
use crate::scalar::Scalar;

/// Default coding threshold: shorter activities are not coded as processes.
pub const DEFAULT_MIN_DURATION_S: f64 = 1.0;

/// One coded activity, as stored in a session log (one JSON object per line).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
pub struct InteractionEvent<T> {
    pub session: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<String>,
    /// Milliseconds since session start.
    pub ts_ms: u64,
    pub tool: ToolId,
    pub process: ProcessId,
    pub duration_s: T,
    /// Document the interaction happened in; needed for click bookkeeping.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doc: Option<String>,
    /// Clicked or hovered term, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    /// Clicked image id, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<String>,
}

impl<T: Scalar> InteractionEvent<T> {
    pub fn new(session: &str, ts_ms: u64, tool: ToolId, process: &str, duration_s: T) -> Self {
        Self {
            session: session.to_string(),
            task: None,
            ts_ms,
            tool,
            process: ProcessId::new(process),
            duration_s,
            doc: None,
            term: None,
            image: None,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.session.trim().is_empty() {
            return Err("session id is empty".into());
        }
        if self.process.0.trim().is_empty() {
            return Err("process name is empty".into());
        }
        if !(self.duration_s > T::zero()) || !self.duration_s.is_finite() {
            return Err(format!("duration_s must be positive, got {}", self.duration_s));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct InteractionTriple<T> {
    #[serde(rename = "tool_src")]
    pub src: ToolId,
    pub process: ProcessId,
    #[serde(rename = "tool_tar")]
    pub tar: ToolId,
    #[serde(default)]
    pub duration_s: T,
    #[serde(default)]
    pub ts_ms: u64,
}

impl<T: Scalar> InteractionTriple<T> {
    pub fn new(src: ToolId, process: &str, tar: ToolId, duration_s: T) -> Self {
        Self { src, process: ProcessId::new(process), tar, duration_s, ts_ms: 0 }
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.tar
    }

    /// The `(src, process, tar)` identity used for identical-triple counting.
    pub fn key(&self) -> (&ToolId, &ProcessId, &ToolId) {
        (&self.src, &self.process, &self.tar)
    }
}

/// Turns a time-ordered event list into ⟨tool_src, process, tool_tar⟩ triples.
///
/// Events shorter than `min_duration_s` are dropped first. Each surviving
/// event then becomes a triple whose target is the next survivor's tool;
/// the final event targets its own tool.
pub fn derive_triples<T: Scalar>(
    events: &[InteractionEvent<T>],
    min_duration_s: T,
) -> Result<Vec<InteractionTriple<T>>, ProvenanceError> {
    for (i, pair) in events.windows(2).enumerate() {
        if pair[1].ts_ms < pair[0].ts_ms {
            return Err(ProvenanceError::UnorderedEvents { index: i + 1, previous: pair[0].ts_ms, found: pair[1].ts_ms });
        }
    }
    let kept: Vec<&InteractionEvent<T>> = events.iter().filter(|e| e.duration_s >= min_duration_s).collect();
    Ok(kept
        .iter()
        .enumerate()
        .map(|(i, e)| InteractionTriple {
            src: e.tool,
            process: e.process.clone(),
            tar: kept.get(i + 1).map_or(e.tool, |next| next.tool),
            duration_s: e.duration_s,
            ts_ms: e.ts_ms,
        })
        .collect())
}

/// Derives triples separately for each session in a mixed log, so that no
/// triple links events of different sessions. Sessions appear in order of
/// their first event.
pub fn derive_session_triples<T: Scalar>(
    events: &[InteractionEvent<T>],
    min_duration_s: T,
) -> Result<Vec<InteractionTriple<T>>, ProvenanceError> {
    let mut order: Vec<&str> = Vec::new();
    let mut by_session: std::collections::HashMap<&str, Vec<InteractionEvent<T>>> = std::collections::HashMap::new();
    for e in events {
        let bucket = by_session.entry(e.session.as_str()).or_insert_with(|| {
            order.push(e.session.as_str());
            Vec::new()
        });
        bucket.push(e.clone());
    }
    let mut out = Vec::with_capacity(events.len());
    for session in order {
        out.extend(derive_triples(&by_session[session], min_duration_s)?);
    }
    Ok(out)
}

/// Reads pre-coded triples, one JSON object per line. Blank lines are skipped.
pub fn read_triples_jsonl<T: Scalar, R: BufRead>(reader: R) -> Result<Vec<InteractionTriple<T>>, ProvenanceError> {
    let mut triples = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| ProvenanceError::InvalidEvent { line: i + 1, reason: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let triple: InteractionTriple<T> =
            serde_json::from_str(&line).map_err(|e| ProvenanceError::InvalidEvent { line: i + 1, reason: e.to_string() })?;
        triples.push(triple);
    }
    Ok(triples)
}

/// Reads a JSONL session log. Blank lines are skipped.
pub fn read_events_jsonl<T: Scalar, R: BufRead>(reader: R) -> Result<Vec<InteractionEvent<T>>, ProvenanceError> {
    let mut events = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| ProvenanceError::InvalidEvent { line: i + 1, reason: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let event: InteractionEvent<T> =
            serde_json::from_str(&line).map_err(|e| ProvenanceError::InvalidEvent { line: i + 1, reason: e.to_string() })?;
        event.validate().map_err(|reason| ProvenanceError::InvalidEvent { line: i + 1, reason })?;
        events.push(event);
    }
    Ok(events)
}

/// Single-line JSON encoding of an event, without the trailing newline.
pub fn event_to_jsonl<T: Scalar>(event: &InteractionEvent<T>) -> String {
    serde_json::to_string(event).expect("event serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::provenance::ToolKind;

    fn ev(ts: u64, kind: ToolKind, process: &str, d: f64) -> InteractionEvent<f64> {
        InteractionEvent::new("s", ts, ToolId::global(kind), process, d)
    }

    #[test]
    fn sessions_are_not_chained() {
        let mut other = ev(5, ToolKind::Searchbar, "q", 2.0);
        other.session = "t".into();
        let events = [ev(0, ToolKind::Toc, "p", 2.0), other, ev(3, ToolKind::Toc, "p", 2.0)];
        let t = derive_session_triples(&events, 1.0).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|x| x.is_loop()));
        assert_eq!(t[2].src, ToolId::global(ToolKind::Searchbar));
    }

    #[test]
    fn triple_lines_parse_with_defaults() {
        let log = "{\"tool_src\":{\"kind\":\"TOC\"},\"process\":\"p\",\"tool_tar\":{\"kind\":\"TOC\"}}\n\n";
        let t: Vec<InteractionTriple<f64>> = read_triples_jsonl(std::io::Cursor::new(log)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].duration_s, 0.0);
        assert!(read_triples_jsonl::<f64, _>(std::io::Cursor::new("{}")).is_err());
    }

    #[test]
    fn empty_events() {
        assert!(derive_triples::<f64>(&[], 1.0).unwrap().is_empty());
    }

    #[test]
    fn pairing_and_self_closure() {
        let a = ToolId::global(ToolKind::Toc);
        let b = ToolId::global(ToolKind::Searchbar);
        let t = derive_triples(&[ev(0, ToolKind::Toc, "p", 2.0), ev(10, ToolKind::Searchbar, "q", 3.0)], 1.0).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].key(), (&a, &ProcessId::new("p"), &b));
        assert_eq!(t[1].key(), (&b, &ProcessId::new("q"), &b));
    }

    #[test]
    fn short_events_are_filtered_before_pairing() {
        let t = derive_triples(
            &[ev(0, ToolKind::Toc, "p", 2.0), ev(1, ToolKind::TileBar, "hovering", 0.5), ev(2, ToolKind::Snippets, "q", 1.0)],
            1.0,
        )
        .unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].tar.kind, ToolKind::Snippets);
        assert!(t.iter().all(|x| x.src.kind != ToolKind::TileBar && x.tar.kind != ToolKind::TileBar));
    }

    #[test]
    fn unordered_events_rejected() {
        let err = derive_triples(&[ev(5, ToolKind::Toc, "p", 2.0), ev(4, ToolKind::Toc, "p", 2.0)], 1.0).unwrap_err();
        assert!(matches!(err, ProvenanceError::UnorderedEvents { index: 1, previous: 5, found: 4 }));
    }

    #[test]
    fn jsonl_round_trip_and_errors() {
        let mut e = ev(3, ToolKind::WordCloud, "click on", 1.5);
        e.tool.chapter = Some(2);
        e.term = Some("insulin".into());
        let line = event_to_jsonl(&e);
        assert_eq!(
            line,
            r#"{"session":"s","ts_ms":3,"tool":{"kind":"WordCloud","chapter":2},"process":"click on","duration_s":1.5,"term":"insulin"}"#
        );
        let parsed: Vec<InteractionEvent<f64>> = read_events_jsonl(format!("{line}\n\n{line}\n").as_bytes()).unwrap();
        assert_eq!(parsed, vec![e.clone(), e]);

        let bad = read_events_jsonl::<f64, _>(&b"{\"session\": \"s\"}\n"[..]).unwrap_err();
        assert!(matches!(bad, ProvenanceError::InvalidEvent { line: 1, .. }));
        let zero = r#"{"session":"s","ts_ms":0,"tool":{"kind":"TOC"},"process":"p","duration_s":0}"#;
        assert!(read_events_jsonl::<f64, _>(zero.as_bytes()).is_err());
    }
}
