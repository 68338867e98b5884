use super::lexicon::{filter_stopwords, lemmatize_and_tag, Lexicon, StopwordList};
use super::terms::{noun_terms, TermVector};
use super::token::{tokenize, Token};
use crate::corpus::{Chapter, Document};
use crate::scalar::Scalar;

/// Tokenize, lemmatize/tag and stopword-filter in one place, so every view
/// matches terms the same way the topic models saw them.
#[derive(Clone, Debug)]
pub struct TextPipeline {
    pub stopwords: StopwordList,
    pub lexicon: Lexicon,
}

impl Default for TextPipeline {
    fn default() -> Self {
        Self::german()
    }
}

impl TextPipeline {
    pub fn new(stopwords: StopwordList, lexicon: Lexicon) -> Self {
        Self { stopwords, lexicon }
    }

    pub fn german() -> Self {
        Self::new(StopwordList::german(), Lexicon::german())
    }

    /// Tokenized and tagged, stopwords kept. Spans refer to `text`.
    pub fn tag(&self, text: &str) -> Vec<Token> {
        lemmatize_and_tag(tokenize(text), &self.lexicon)
    }

    /// Tagged tokens with stopwords removed.
    pub fn content_tokens(&self, text: &str) -> Vec<Token> {
        filter_stopwords(self.tag(text), &self.stopwords)
    }

    /// Lowercased lemma a query term is matched under.
    pub fn query_key(&self, term: &str) -> String {
        match self.lexicon.lookup(term.trim()) {
            Some(entry) => entry.lemma.to_lowercase(),
            None => term.trim().to_lowercase(),
        }
    }

    /// Noun lemma lists, one per section: the LDA documents of a chapter.
    pub fn chapter_documents(&self, chapter: &Chapter) -> Vec<Vec<String>> {
        chapter
            .sections
            .iter()
            .map(|s| {
                self.content_tokens(&s.text)
                    .into_iter()
                    .filter(|t| t.pos == super::Pos::Noun)
                    .map(|t| t.term_key())
                    .collect()
            })
            .collect()
    }

    /// Noun frequencies over the whole document body.
    pub fn document_nouns<T: Scalar>(&self, document: &Document) -> TermVector<T> {
        let mut total = TermVector::new();
        for section in document.chapters.iter().flat_map(|c| c.sections.iter()) {
            for (term, count) in noun_terms::<T>(&self.content_tokens(&section.text)).iter() {
                total.add(term, count);
            }
        }
        total
    }
}
