use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub publisher: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<u16>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<String>,
}

/// An ingested document. Immutable once built by [`super::ingest_document`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub metadata: Metadata,
    pub cover: Option<String>,
    pub chapters: Vec<Chapter>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chapter {
    pub number: u32,
    pub title: String,
    pub sections: Vec<Section>,
    pub images: Vec<ImageAsset>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub heading: String,
    pub paragraphs: Vec<String>,
    /// Paragraphs joined by blank lines; sentence spans index into this.
    pub text: String,
    pub sentences: Vec<Sentence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub index: usize,
    /// Byte offsets into the owning section's text.
    pub char_span: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageAsset {
    pub id: String,
    pub chapter_number: u32,
    pub uri: String,
    pub caption: Option<String>,
    /// Tables, diagrams, flow charts and other structured content.
    pub structured: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextChunk {
    pub chapter_number: u32,
    pub index: usize,
    pub token_span: (usize, usize),
}

impl TextChunk {
    pub fn len(&self) -> usize {
        self.token_span.1 - self.token_span.0
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Document {
    pub fn chapter(&self, number: u32) -> Option<&Chapter> {
        self.chapters.iter().find(|c| c.number == number)
    }

    pub fn image_count(&self) -> usize {
        self.chapters.iter().map(|c| c.images.len()).sum()
    }
}

impl Chapter {
    /// Number of tokens in the chapter body, across all sections.
    pub fn token_count(&self) -> usize {
        self.sections.iter().map(|s| crate::text::tokenize(&s.text).len()).sum()
    }
}
