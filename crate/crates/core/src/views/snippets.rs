use serde::{Deserialize, Serialize};

use crate::corpus::{Document, Section};
use crate::text::TextPipeline;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Before,
    After,
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "before" => Ok(Direction::Before),
            "after" => Ok(Direction::After),
            other => Err(format!("unknown direction `{other}`")),
        }
    }
}

/// Byte range of one term occurrence in the section text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Highlight {
    pub sentence_index: usize,
    pub span: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnippetHit {
    /// Lemma key the hit was searched under.
    pub term: String,
    pub chapter_number: u32,
    pub section_index: usize,
    pub section_heading: String,
    pub center_sentence_index: usize,
    /// Inclusive sentence range shown.
    pub window: (usize, usize),
    pub highlights: Vec<Highlight>,
}

impl SnippetHit {
    pub fn width(&self) -> usize {
        self.window.1 - self.window.0 + 1
    }

    pub fn section<'a>(&self, document: &'a Document) -> Option<&'a Section> {
        document.chapter(self.chapter_number)?.sections.get(self.section_index)
    }

    /// Text of the visible window, sentences joined by single spaces.
    pub fn window_text(&self, document: &Document) -> String {
        self.section(document)
            .map(|s| {
                s.sentences[self.window.0..=self.window.1].iter().map(|x| x.text.as_str()).collect::<Vec<_>>().join(" ")
            })
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnippetGroup {
    pub chapter_number: u32,
    pub section_index: usize,
    pub section_heading: String,
    pub hits: Vec<SnippetHit>,
}

fn occurrences(section: &Section, sentence: usize, key: &str, pipeline: &TextPipeline) -> Vec<Highlight> {
    let s = &section.sentences[sentence];
    pipeline
        .tag(&s.text)
        .into_iter()
        .filter(|t| t.term_key() == key)
        .map(|t| Highlight { sentence_index: sentence, span: (s.char_span.0 + t.span.0, s.char_span.0 + t.span.1) })
        .collect()
}

fn highlights(section: &Section, window: (usize, usize), key: &str, pipeline: &TextPipeline) -> Vec<Highlight> {
    (window.0..=window.1).flat_map(|i| occurrences(section, i, key, pipeline)).collect()
}

/// One hit per sentence containing `term`, in document order. Each window
/// starts as the matching sentence alone.
pub fn find_snippets(document: &Document, term: &str, pipeline: &TextPipeline) -> Vec<SnippetHit> {
    let key = pipeline.query_key(term);
    if key.is_empty() {
        return Vec::new();
    }
    let mut hits = Vec::new();
    for chapter in &document.chapters {
        for (section_index, section) in chapter.sections.iter().enumerate() {
            for sentence in 0..section.sentences.len() {
                let found = occurrences(section, sentence, &key, pipeline);
                if found.is_empty() {
                    continue;
                }
                hits.push(SnippetHit {
                    term: key.clone(),
                    chapter_number: chapter.number,
                    section_index,
                    section_heading: section.heading.clone(),
                    center_sentence_index: sentence,
                    window: (sentence, sentence),
                    highlights: found,
                });
            }
        }
    }
    hits
}

/// Reveals one more sentence before or after the window, stopping at the
/// section boundary. Highlights are recomputed for the new window.
pub fn expand_snippet(document: &Document, hit: &SnippetHit, direction: Direction, pipeline: &TextPipeline) -> SnippetHit {
    let Some(section) = hit.section(document) else {
        return hit.clone();
    };
    let last = section.sentences.len().saturating_sub(1);
    let (first, end) = hit.window;
    let window = match direction {
        Direction::Before => (first.saturating_sub(1), end),
        Direction::After => (first, (end + 1).min(last)),
    };
    if window == hit.window {
        return hit.clone();
    }
    SnippetHit { window, highlights: highlights(section, window, &hit.term, pipeline), ..hit.clone() }
}

/// Groups consecutive hits that share a section.
pub fn group_by_section(hits: &[SnippetHit]) -> Vec<SnippetGroup> {
    let mut groups: Vec<SnippetGroup> = Vec::new();
    for hit in hits {
        match groups.last_mut() {
            Some(g) if g.chapter_number == hit.chapter_number && g.section_index == hit.section_index => g.hits.push(hit.clone()),
            _ => groups.push(SnippetGroup {
                chapter_number: hit.chapter_number,
                section_index: hit.section_index,
                section_heading: hit.section_heading.clone(),
                hits: vec![hit.clone()],
            }),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ingest_document;

    fn doc() -> Document {
        let src = r#"{"id": "d", "title": "T", "chapters": [
            {"number": 1, "title": "K", "sections": [
                {"heading": "Eins", "paragraphs": ["Null ist hier. Eins ist hier. Zwei nennt Insulin. Drei ist hier. Vier nennt insulin und Insulin."]},
                {"heading": "Zwei", "paragraphs": ["Kein Treffer hier."]}
            ]}]}"#;
        ingest_document(src).unwrap()
    }

    #[test]
    fn absent_term() {
        assert!(find_snippets(&doc(), "Pumpe", &TextPipeline::german()).is_empty());
        assert!(find_snippets(&doc(), "  ", &TextPipeline::german()).is_empty());
    }

    #[test]
    fn one_hit_per_sentence() {
        let p = TextPipeline::german();
        let hits = find_snippets(&doc(), "Insulin", &p);
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].window, (2, 2));
        assert_eq!(hits[0].width(), 1);
        assert_eq!(hits[1].highlights.len(), 2);
        let text = &doc().chapters[0].sections[0].text;
        for h in hits.iter().flat_map(|h| &h.highlights) {
            assert_eq!(text[h.span.0..h.span.1].to_lowercase(), "insulin");
        }
    }

    #[test]
    fn expansion_steps_and_clamps() {
        let p = TextPipeline::german();
        let d = doc();
        let mut hit = find_snippets(&d, "insulin", &p).remove(1);
        hit.window = (3, 3);
        hit.center_sentence_index = 3;
        let before = expand_snippet(&d, &hit, Direction::Before, &p);
        assert_eq!(before.window, (2, 3));
        assert_eq!(before.highlights.len(), 1);

        let at_start = SnippetHit { window: (0, 2), ..hit.clone() };
        assert_eq!(expand_snippet(&d, &at_start, Direction::Before, &p), at_start);

        let mut full = hit.clone();
        for _ in 0..10 {
            full = expand_snippet(&d, &full, Direction::Before, &p);
            full = expand_snippet(&d, &full, Direction::After, &p);
        }
        assert_eq!(full.window, (0, 4));
        assert_eq!(full.highlights.len(), 3);
        assert_eq!(expand_snippet(&d, &full, Direction::After, &p), full);
    }

    #[test]
    fn grouping_and_text() {
        let p = TextPipeline::german();
        let d = doc();
        let hits = find_snippets(&d, "hier", &p);
        let groups = group_by_section(&hits);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].hits.len(), 3);
        assert_eq!(groups[1].section_heading, "Zwei");
        assert_eq!(hits[0].window_text(&d), "Null ist hier.");
    }
}
