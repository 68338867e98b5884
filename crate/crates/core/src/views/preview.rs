use serde::{Deserialize, Serialize};

use crate::corpus::{Document, Metadata};
use crate::text::TextPipeline;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermCount {
    pub term: String,
    pub count: u32,
}

/// Library card: metadata plus the most frequent noun lemmas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentPreview {
    pub id: String,
    pub title: String,
    pub metadata: Metadata,
    pub cover: Option<String>,
    pub chapter_count: usize,
    pub histogram: Vec<TermCount>,
}

pub fn document_preview(document: &Document, top_n: usize, pipeline: &TextPipeline) -> DocumentPreview {
    let mut histogram: Vec<TermCount> = pipeline
        .document_nouns::<f64>(document)
        .ranked()
        .into_iter()
        .map(|(term, count)| TermCount { term, count: count as u32 })
        .collect();
    histogram.truncate(top_n.max(1));
    DocumentPreview {
        id: document.id.clone(),
        title: document.title.clone(),
        metadata: document.metadata.clone(),
        cover: document.cover.clone(),
        chapter_count: document.chapters.len(),
        histogram,
    }
}
