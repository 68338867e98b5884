use serde::{Deserialize, Serialize};

/// Coarse part-of-speech tagset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Other,
}

impl std::str::FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NOUN" => Ok(Pos::Noun),
            "VERB" => Ok(Pos::Verb),
            "ADJ" => Ok(Pos::Adj),
            "OTHER" => Ok(Pos::Other),
            other => Err(format!("unknown part-of-speech tag `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    /// Position in the token stream the token was produced from.
    pub index: usize,
    /// Byte range of the surface form in the tokenized text.
    pub span: (usize, usize),
}

impl Token {
    /// Lowercased lemma, the key used for term matching and counting.
    pub fn term_key(&self) -> String {
        self.lemma.to_lowercase()
    }
}

fn is_token_char(c: char) -> bool {
    c.is_alphanumeric() || c == '-'
}

/// Splits text into maximal runs of letters, digits and hyphens.
///
/// Hyphens at either end of a run are trimmed (so dashes used as
/// punctuation never become tokens); runs that are only hyphens are skipped.
/// Surface case is preserved and `lemma` starts out equal to the surface.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut run_start: Option<usize> = None;

    let flush = |start: usize, end: usize, tokens: &mut Vec<Token>| {
        let run = &text[start..end];
        let trimmed_front = run.trim_start_matches('-');
        let lead = run.len() - trimmed_front.len();
        let word = trimmed_front.trim_end_matches('-');
        if word.is_empty() {
            return;
        }
        let s = start + lead;
        tokens.push(Token {
            surface: word.to_string(),
            lemma: word.to_string(),
            pos: Pos::Other,
            index: tokens.len(),
            span: (s, s + word.len()),
        });
    };

    for (i, c) in text.char_indices() {
        match (is_token_char(c), run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(start)) => {
                flush(start, i, &mut tokens);
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(start) = run_start {
        flush(start, text.len(), &mut tokens);
    }
    tokens
}
