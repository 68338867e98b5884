use std::collections::{HashMap, HashSet};

use super::token::{Pos, Token};
use super::TextError;

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords_de.txt");
const DEFAULT_LEXICON: &str = include_str!("../../data/lexicon_de.tsv");

/// Lowercase stopword set, one term per line in its file form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self { words: words.into_iter().map(|w| w.as_ref().trim().to_lowercase()).filter(|w| !w.is_empty()).collect() }
    }

    /// Parses the line-oriented file format. Blank lines and `#` comments are skipped.
    pub fn parse(source: &str) -> Self {
        Self::new(source.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')))
    }

    pub fn german() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    pub fn contains(&self, lowercase: &str) -> bool {
        self.words.contains(lowercase)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconEntry {
    pub lemma: String,
    pub pos: Pos,
}

/// Surface form to (lemma, part of speech) dictionary.
///
/// Lookups try the exact surface first and then its lowercase form, so
/// sentence-initial capitalisation does not defeat a lowercase entry.
#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    entries: HashMap<String, LexiconEntry>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, surface: impl Into<String>, lemma: impl Into<String>, pos: Pos) {
        self.entries.insert(surface.into(), LexiconEntry { lemma: lemma.into(), pos });
    }

    /// Parses `surface<TAB>lemma<TAB>pos` lines.
    pub fn parse_tsv(source: &str) -> Result<Self, TextError> {
        let mut lexicon = Self::new();
        for (lineno, line) in source.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 || fields.iter().any(|f| f.trim().is_empty()) {
                return Err(TextError::MalformedLexicon { line: lineno + 1, reason: "expected surface, lemma and pos".into() });
            }
            let pos = fields[2].parse::<Pos>().map_err(|reason| TextError::MalformedLexicon { line: lineno + 1, reason })?;
            lexicon.insert(fields[0].trim(), fields[1].trim(), pos);
        }
        Ok(lexicon)
    }

    pub fn german() -> Self {
        Self::parse_tsv(DEFAULT_LEXICON).expect("bundled lexicon is well formed")
    }

    pub fn lookup(&self, surface: &str) -> Option<&LexiconEntry> {
        self.entries.get(surface).or_else(|| self.entries.get(&surface.to_lowercase()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Removes tokens whose lowercased lemma is a stopword. Order is preserved.
pub fn filter_stopwords(tokens: Vec<Token>, stopwords: &StopwordList) -> Vec<Token> {
    if stopwords.is_empty() {
        return tokens;
    }
    tokens.into_iter().filter(|t| !stopwords.contains(&t.lemma.to_lowercase())).collect()
}

/// Fills lemma and part of speech from the lexicon. Unknown surfaces get
/// their lowercased surface as lemma; they are tagged `Pos::Noun` when
/// capitalized (an uppercase letter followed by a lowercase one, as German
/// nouns are) and `Pos::Other` otherwise.
pub fn lemmatize_and_tag(tokens: Vec<Token>, lexicon: &Lexicon) -> Vec<Token> {
    tokens
        .into_iter()
        .map(|mut t| {
            match lexicon.lookup(&t.surface) {
                Some(entry) => {
                    t.lemma = entry.lemma.clone();
                    t.pos = entry.pos;
                }
                None => {
                    t.lemma = t.surface.to_lowercase();
                    t.pos = if looks_like_noun(&t.surface) { Pos::Noun } else { Pos::Other };
                }
            }
            t
        })
        .collect()
}

fn looks_like_noun(surface: &str) -> bool {
    let mut chars = surface.chars();
    matches!((chars.next(), chars.next()), (Some(a), Some(b)) if a.is_uppercase() && b.is_lowercase())
}
