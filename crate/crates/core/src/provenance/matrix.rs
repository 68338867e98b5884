use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::events::InteractionTriple;
use super::taxonomy::{ProcessId, Taxonomy, ToolId, ToolKind};
use super::ProvenanceError;
use crate::scalar::Scalar;
use crate::views::svg::{blend, escape};

/// Transitions between tool kinds that the interface can actually produce.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityMask {
    pub allowed: BTreeSet<(ToolKind, ToolKind)>,
}

#[derive(Deserialize)]
struct MaskFile {
    allowed: Vec<MaskRow>,
}

#[derive(Deserialize)]
struct MaskRow {
    from: ToolKind,
    to: Vec<ToolKind>,
}

impl FeasibilityMask {
    /// Parses `[[allowed]] from = "WordCloud", to = ["TileBar", ...]` tables.
    /// Self-transitions are always allowed.
    pub fn parse_toml(source: &str) -> Result<Self, ProvenanceError> {
        let file: MaskFile = toml::from_str(source).map_err(|e| ProvenanceError::InvalidTaxonomy(e.to_string()))?;
        let mut allowed: BTreeSet<(ToolKind, ToolKind)> = ToolKind::ALL.iter().map(|&k| (k, k)).collect();
        for row in file.allowed {
            allowed.extend(row.to.into_iter().map(|t| (row.from, t)));
        }
        Ok(Self { allowed })
    }

    pub fn permits(&self, from: ToolKind, to: ToolKind) -> bool {
        from == to || self.allowed.contains(&(from, to))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskViolation {
    pub from: ToolKind,
    pub to: ToolKind,
    pub count: u64,
}

/// Counts of triples by `(source kind, target kind)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    /// Row and column order (by abstraction rank).
    pub kinds: Vec<ToolKind>,
    pub counts: Vec<Vec<u64>>,
    /// Observed transitions the feasibility mask rules out. Kept in `counts`.
    pub warnings: Vec<MaskViolation>,
}

impl TransitionMatrix {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn get(&self, from: ToolKind, to: ToolKind) -> u64 {
        let idx = |k| self.kinds.iter().position(|&x| x == k);
        match (idx(from), idx(to)) {
            (Some(r), Some(c)) => self.counts[r][c],
            _ => 0,
        }
    }
}

pub fn transition_matrix<T: Scalar>(
    triples: &[InteractionTriple<T>],
    taxonomy: &Taxonomy,
    mask: Option<&FeasibilityMask>,
) -> Result<TransitionMatrix, ProvenanceError> {
    let kinds = taxonomy.kinds_by_rank();
    let index = |k: ToolKind| {
        kinds.iter().position(|&x| x == k).ok_or_else(|| ProvenanceError::InvalidTool(format!("{k:?} not in taxonomy")))
    };
    let mut counts = vec![vec![0u64; kinds.len()]; kinds.len()];
    for t in triples {
        counts[index(t.src.kind)?][index(t.tar.kind)?] += 1;
    }
    let mut warnings = Vec::new();
    if let Some(mask) = mask {
        for (r, &from) in kinds.iter().enumerate() {
            for (c, &to) in kinds.iter().enumerate() {
                if counts[r][c] > 0 && !mask.permits(from, to) {
                    warnings.push(MaskViolation { from, to, count: counts[r][c] });
                }
            }
        }
    }
    Ok(TransitionMatrix { kinds, counts, warnings })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MatrixCell<T> {
    pub tool: ToolId,
    pub process: ProcessId,
    pub duration_s: T,
    /// Positions of the contributing triples in the sequence (hover payload).
    pub triples: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MatrixTransition<T> {
    pub from: (ToolId, ProcessId),
    pub to: (ToolId, ProcessId),
    /// Opacity in `(0, 1]`, increasing toward the most recent transition.
    pub alpha: T,
}

/// Tools (rows, overview to close-up) by processes (columns, basal to
/// cognitive) with dwell time per cell and the most recent transitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MatrixView<T> {
    pub rows: Vec<ToolId>,
    pub columns: Vec<ProcessId>,
    pub cells: Vec<MatrixCell<T>>,
    pub transitions: Vec<MatrixTransition<T>>,
}

impl<T: Scalar> MatrixView<T> {
    pub fn cell(&self, tool: &ToolId, process: &ProcessId) -> Option<&MatrixCell<T>> {
        self.cells.iter().find(|c| &c.tool == tool && &c.process == process)
    }

    pub fn to_svg(&self, cell_size: u32, low: &str, high: &str) -> String {
        let label_w = 90u32;
        let label_h = 90u32;
        let (w, h) = (label_w + cell_size * self.columns.len() as u32, label_h + cell_size * self.rows.len() as u32);
        let row_of = |t: &ToolId| self.rows.iter().position(|r| r == t).unwrap_or(0) as u32;
        let col_of = |p: &ProcessId| self.columns.iter().position(|c| c == p).unwrap_or(0) as u32;
        let center = |t: &ToolId, p: &ProcessId| {
            (label_w + col_of(p) * cell_size + cell_size / 2, label_h + row_of(t) * cell_size + cell_size / 2)
        };
        let max = self.cells.iter().map(|c| c.duration_s.to_f64_lossy()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

        let mut out = String::new();
        let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="10">"#);
        for (i, row) in self.rows.iter().enumerate() {
            let y = label_h + i as u32 * cell_size + cell_size / 2;
            let _ = writeln!(out, r#"  <text x="4" y="{y}">{}</text>"#, escape(&row.to_string()));
        }
        for (j, col) in self.columns.iter().enumerate() {
            let x = label_w + j as u32 * cell_size + cell_size / 2;
            let _ = writeln!(out, r#"  <text transform="translate({x},{}) rotate(-60)">{}</text>"#, label_h - 4, escape(col.as_str()));
        }
        for cell in &self.cells {
            let (cx, cy) = center(&cell.tool, &cell.process);
            let fill = blend(low, high, cell.duration_s.to_f64_lossy() / max);
            let _ = writeln!(
                out,
                r#"  <rect x="{}" y="{}" width="{cell_size}" height="{cell_size}" fill="{fill}"><title>{} / {}: {:.1}s, triples {:?}</title></rect>"#,
                cx - cell_size / 2,
                cy - cell_size / 2,
                escape(&cell.tool.to_string()),
                escape(cell.process.as_str()),
                cell.duration_s.to_f64_lossy(),
                cell.triples
            );
        }
        for t in &self.transitions {
            let (x1, y1) = center(&t.from.0, &t.from.1);
            let (x2, y2) = center(&t.to.0, &t.to.1);
            let _ = writeln!(
                out,
                r##"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#d62728" stroke-width="2" stroke-opacity="{:.3}"/>"##,
                t.alpha.to_f64_lossy()
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Aggregates dwell time per `(source tool, process)` and keeps the last
/// `max_visible_transitions` transitions with linearly increasing alpha.
pub fn build_matrix_view<T: Scalar>(
    triples: &[InteractionTriple<T>],
    taxonomy: &Taxonomy,
    max_visible_transitions: usize,
) -> MatrixView<T> {
    let mut cells: BTreeMap<(ToolId, ProcessId), MatrixCell<T>> = BTreeMap::new();
    let mut tools = BTreeSet::new();
    let mut processes = BTreeSet::new();
    for (i, t) in triples.iter().enumerate() {
        tools.insert(t.src);
        tools.insert(t.tar);
        processes.insert(t.process.clone());
        let cell = cells.entry((t.src, t.process.clone())).or_insert_with(|| MatrixCell {
            tool: t.src,
            process: t.process.clone(),
            duration_s: T::zero(),
            triples: Vec::new(),
        });
        cell.duration_s = cell.duration_s + t.duration_s;
        cell.triples.push(i);
    }

    let mut rows: Vec<ToolId> = tools.into_iter().collect();
    taxonomy.sort_tools(&mut rows);
    let mut columns: Vec<ProcessId> = processes.into_iter().collect();
    columns.sort_by_key(|p| (taxonomy.process_rank(p).unwrap_or(usize::MAX), p.clone()));

    let steps: Vec<(&InteractionTriple<T>, &InteractionTriple<T>)> = triples.windows(2).map(|w| (&w[0], &w[1])).collect();
    let visible = &steps[steps.len().saturating_sub(max_visible_transitions)..];
    let count = T::from_count(visible.len());
    let transitions = visible
        .iter()
        .enumerate()
        .map(|(j, (a, b))| MatrixTransition {
            from: (a.src, a.process.clone()),
            to: (b.src, b.process.clone()),
            alpha: T::from_count(j + 1) / count,
        })
        .collect();

    MatrixView { rows, columns, cells: cells.into_values().collect(), transitions }
}
