use serde::{Deserialize, Serialize};

use crate::corpus::{chunk_spans, Document};
use crate::text::TextPipeline;

/// Term frequency per chunk; one row per chapter, in chapter order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileBarGrid {
    pub term: String,
    pub chunk_size: usize,
    pub rows: Vec<Vec<u32>>,
    /// Largest cell value; zero when the term never occurs.
    pub max_frequency: u32,
}

impl TileBarGrid {
    pub fn total(&self) -> u64 {
        self.rows.iter().flatten().map(|&c| c as u64).sum()
    }

    /// Intensity in `(0, 1]` for a non-empty cell; `None` marks a zero cell,
    /// which is drawn in the neutral gray.
    pub fn intensity(&self, count: u32) -> Option<f64> {
        (count > 0 && self.max_frequency > 0).then(|| count as f64 / self.max_frequency as f64)
    }
}

/// Counts lemma-matched occurrences of `term` in every chunk of every chapter.
pub fn compute_tilebar(document: &Document, term: &str, chunk_size: usize, pipeline: &TextPipeline) -> TileBarGrid {
    let key = pipeline.query_key(term);
    let size = chunk_size.max(1);
    let rows: Vec<Vec<u32>> = document
        .chapters
        .iter()
        .map(|chapter| {
            let matches: Vec<bool> = chapter
                .sections
                .iter()
                .flat_map(|s| pipeline.tag(&s.text))
                .map(|t| !key.is_empty() && t.term_key() == key)
                .collect();
            chunk_spans(matches.len(), size)
                .into_iter()
                .map(|(start, end)| matches[start..end].iter().filter(|&&m| m).count() as u32)
                .collect()
        })
        .collect();
    let max_frequency = rows.iter().flatten().copied().max().unwrap_or(0);
    TileBarGrid { term: key, chunk_size: size, rows, max_frequency }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ingest_document;

    fn doc(chapters: &[&str]) -> Document {
        let chapters: Vec<String> = chapters
            .iter()
            .enumerate()
            .map(|(i, text)| {
                format!(r#"{{"number": {}, "title": "K", "sections": [{{"heading": "H", "paragraphs": ["{text}"]}}]}}"#, i + 1)
            })
            .collect();
        ingest_document(&format!(r#"{{"id": "d", "title": "T", "chapters": [{}]}}"#, chapters.join(","))).unwrap()
    }

    #[test]
    fn absent_term_gives_zero_grid() {
        let g = compute_tilebar(&doc(&["eins zwei drei", "vier"]), "insulin", 2, &TextPipeline::german());
        assert_eq!(g.rows, vec![vec![0, 0], vec![0]]);
        assert_eq!(g.max_frequency, 0);
        assert_eq!(g.intensity(0), None);
    }

    #[test]
    fn single_occurrence_in_first_chunk() {
        let g = compute_tilebar(&doc(&["Insulin a b c d e f"]), "insulin", 3, &TextPipeline::german());
        assert_eq!(g.rows, vec![vec![1, 0, 0]]);
        assert_eq!(g.max_frequency, 1);
        assert_eq!(g.intensity(1), Some(1.0));
    }

    #[test]
    fn matching_is_lemma_based_and_case_insensitive() {
        let g = compute_tilebar(&doc(&["Werte WERT wert Wertes"]), "Werte", 10, &TextPipeline::german());
        // "Werte" and "Wert" share the lemma; "WERT" via lowercase lookup; "Wertes" is unknown
        assert_eq!(g.term, "wert");
        assert_eq!(g.total(), 3);
    }
}
