use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::model::{Chapter, Document, ImageAsset, Metadata, Section};
use super::segment::SentenceSegmenter;
use super::CorpusError;

/// On-disk document format. Also the canonical serialized form: writing a
/// [`Document`] back out with [`Document::to_source`] and ingesting it again
/// yields an equal document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceDocument {
    pub id: String,
    pub title: String,
    #[serde(default)]
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<String>,
    pub chapters: Vec<SourceChapter>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceChapter {
    pub number: u32,
    pub title: String,
    pub sections: Vec<SourceSection>,
    #[serde(default)]
    pub images: Vec<SourceImage>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSection {
    pub heading: String,
    pub paragraphs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceImage {
    pub id: String,
    pub uri: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caption: Option<String>,
    #[serde(default)]
    pub structured: bool,
}

/// Parses and validates a JSON document source.
pub fn ingest_document(json: &str) -> Result<Document, CorpusError> {
    let source: SourceDocument = serde_json::from_str(json).map_err(|e| CorpusError::MalformedSource(e.to_string()))?;
    ingest_source(source, &SentenceSegmenter::default())
}

pub fn ingest_source(source: SourceDocument, segmenter: &SentenceSegmenter) -> Result<Document, CorpusError> {
    if source.id.trim().is_empty() {
        return Err(CorpusError::MalformedSource("document id is empty".into()));
    }
    if source.chapters.is_empty() {
        return Err(CorpusError::EmptyDocument);
    }

    let mut seen = HashSet::new();
    for chapter in &source.chapters {
        if !seen.insert(chapter.number) {
            return Err(CorpusError::DuplicateChapterNumber(chapter.number));
        }
    }
    let mut chapters_src = source.chapters;
    chapters_src.sort_by_key(|c| c.number);
    for (i, chapter) in chapters_src.iter().enumerate() {
        let expected = i as u32 + 1;
        if chapter.number != expected {
            return Err(CorpusError::ChapterGap { expected, found: chapter.number });
        }
    }

    let mut image_ids = HashSet::new();
    let mut chapters = Vec::with_capacity(chapters_src.len());
    for chapter in chapters_src {
        if chapter.sections.is_empty() {
            return Err(CorpusError::MalformedSource(format!("chapter {} has no sections", chapter.number)));
        }
        let sections = chapter
            .sections
            .into_iter()
            .map(|s| {
                let text = s.paragraphs.join("\n\n");
                let sentences = segmenter.segment(&text);
                Section { heading: s.heading, paragraphs: s.paragraphs, text, sentences }
            })
            .collect();
        let mut images = Vec::with_capacity(chapter.images.len());
        for image in chapter.images {
            if image.uri.trim().is_empty() {
                return Err(CorpusError::MalformedSource(format!("image `{}` has an empty uri", image.id)));
            }
            let caption = image.caption.filter(|c| !c.trim().is_empty());
            if image.structured && caption.is_none() {
                return Err(CorpusError::MalformedSource(format!("structured image `{}` needs a caption", image.id)));
            }
            if !image_ids.insert(image.id.clone()) {
                return Err(CorpusError::MalformedSource(format!("duplicate image id `{}`", image.id)));
            }
            images.push(ImageAsset {
                id: image.id,
                chapter_number: chapter.number,
                uri: image.uri,
                caption,
                structured: image.structured,
            });
        }
        chapters.push(Chapter { number: chapter.number, title: chapter.title, sections, images });
    }

    Ok(Document { id: source.id, title: source.title, metadata: source.metadata, cover: source.cover, chapters })
}

impl Document {
    pub fn to_source(&self) -> SourceDocument {
        SourceDocument {
            id: self.id.clone(),
            title: self.title.clone(),
            metadata: self.metadata.clone(),
            cover: self.cover.clone(),
            chapters: self
                .chapters
                .iter()
                .map(|c| SourceChapter {
                    number: c.number,
                    title: c.title.clone(),
                    sections: c
                        .sections
                        .iter()
                        .map(|s| SourceSection { heading: s.heading.clone(), paragraphs: s.paragraphs.clone() })
                        .collect(),
                    images: c
                        .images
                        .iter()
                        .map(|i| SourceImage {
                            id: i.id.clone(),
                            uri: i.uri.clone(),
                            caption: i.caption.clone(),
                            structured: i.structured,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Canonical pretty-printed JSON, accepted by [`ingest_document`].
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_source()).expect("document source serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(chapters: &str) -> String {
        format!(r#"{{"id": "d", "title": "T", "chapters": [{chapters}]}}"#)
    }

    fn chapter(n: u32) -> String {
        format!(r#"{{"number": {n}, "title": "K{n}", "sections": [{{"heading": "H", "paragraphs": ["Ein Satz."]}}]}}"#)
    }

    #[test]
    fn minimal_document() {
        let doc = ingest_document(&minimal(&chapter(1))).unwrap();
        assert_eq!(doc.chapters.len(), 1);
        assert_eq!(doc.chapters[0].sections.len(), 1);
        assert_eq!(doc.chapters[0].sections[0].sentences.len(), 1);
    }

    #[test]
    fn zero_chapters() {
        assert!(matches!(ingest_document(&minimal("")), Err(CorpusError::EmptyDocument)));
    }

    #[test]
    fn gap_in_numbering() {
        let src = minimal(&format!("{},{}", chapter(1), chapter(3)));
        assert!(matches!(ingest_document(&src), Err(CorpusError::ChapterGap { expected: 2, found: 3 })));
    }

    #[test]
    fn duplicate_numbers() {
        let src = minimal(&format!("{},{}", chapter(1), chapter(1)));
        assert!(matches!(ingest_document(&src), Err(CorpusError::DuplicateChapterNumber(1))));
    }

    #[test]
    fn out_of_order_chapters_are_sorted() {
        let doc = ingest_document(&minimal(&format!("{},{}", chapter(2), chapter(1)))).unwrap();
        assert_eq!(doc.chapters.iter().map(|c| c.number).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(ingest_document("{not json"), Err(CorpusError::MalformedSource(_))));
        assert!(matches!(ingest_document(r#"{"id": "d", "chapters": []}"#), Err(CorpusError::MalformedSource(_))));
        let unknown = r#"{"id": "d", "title": "T", "extra": 1, "chapters": []}"#;
        assert!(matches!(ingest_document(unknown), Err(CorpusError::MalformedSource(_))));
        let no_sections = minimal(r#"{"number": 1, "title": "K", "sections": []}"#);
        assert!(matches!(ingest_document(&no_sections), Err(CorpusError::MalformedSource(_))));
    }

    #[test]
    fn structured_image_requires_caption() {
        let ch = r#"{"number": 1, "title": "K", "sections": [{"heading": "H", "paragraphs": ["x"]}],
                     "images": [{"id": "i1", "uri": "a.png", "structured": true}]}"#;
        assert!(matches!(ingest_document(&minimal(ch)), Err(CorpusError::MalformedSource(_))));
        let empty_uri = r#"{"number": 1, "title": "K", "sections": [{"heading": "H", "paragraphs": ["x"]}],
                     "images": [{"id": "i1", "uri": " "}]}"#;
        assert!(matches!(ingest_document(&minimal(empty_uri)), Err(CorpusError::MalformedSource(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let doc = ingest_document(&minimal(&format!("{},{}", chapter(1), chapter(2)))).unwrap();
        assert_eq!(ingest_document(&doc.to_canonical_json()).unwrap(), doc);
    }
}
