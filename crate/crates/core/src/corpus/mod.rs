//! Document tree: ingestion, sentence segmentation and token chunking.

mod chunk;
mod ingest;
mod model;
mod segment;

pub use chunk::{chunk_chapter, DEFAULT_CHUNK_SIZE};
pub(crate) use chunk::chunk_spans;
pub use ingest::{ingest_document, ingest_source, SourceChapter, SourceDocument, SourceImage, SourceSection};
pub use model::{Chapter, Document, ImageAsset, Metadata, Section, Sentence, TextChunk};
pub use segment::{segment_sentences, SentenceSegmenter, GERMAN_ABBREVIATIONS};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("malformed source: {0}")]
    MalformedSource(String),
    #[error("document has no chapters")]
    EmptyDocument,
    #[error("chapter number {0} appears more than once")]
    DuplicateChapterNumber(u32),
    #[error("chapter numbers must be contiguous from 1: expected {expected}, found {found}")]
    ChapterGap { expected: u32, found: u32 },
}
