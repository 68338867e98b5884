use std::collections::HashSet;

use super::model::Sentence;

/// German abbreviations that end in a period but do not end a sentence.
/// Multi-part forms are listed with a single space between parts.
pub const GERMAN_ABBREVIATIONS: &[&str] = &[
    "z.", "z. b.", "z.b.", "d. h.", "d.h.", "u. a.", "u.a.", "o. ä.", "o.ä.", "u. u.", "u.u.", "s. o.", "s. u.",
    "bzw.", "ca.", "dr.", "prof.", "med.", "evtl.", "ggf.", "inkl.", "nr.", "s.", "vgl.", "usw.", "etc.", "sog.",
    "mind.", "max.", "min.", "std.", "bspw.", "zzgl.", "abb.", "tab.", "kap.", "jh.", "mio.", "mrd.", "str.",
    "tel.", "allg.", "insb.", "v. a.", "i. d.", "i. d. r.", "u.",
];

/// Rule-based sentence splitter.
///
/// A boundary is a run of `.`, `!` or `?` (plus closing quotes/brackets)
/// followed by whitespace and an uppercase letter. A period does not split
/// when the word it ends is a known abbreviation, or is a number (German
/// ordinals such as "3. Mai").
#[derive(Clone, Debug)]
pub struct SentenceSegmenter {
    abbreviations: HashSet<String>,
}

impl Default for SentenceSegmenter {
    fn default() -> Self {
        Self::new(GERMAN_ABBREVIATIONS.iter().copied())
    }
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | '”' | '“' | '»' | '«' | ')' | ']' | '’')
}

fn is_opening(c: char) -> bool {
    matches!(c, '"' | '\'' | '„' | '“' | '»' | '«' | '(' | '[' | '‚')
}

impl SentenceSegmenter {
    pub fn new<I, S>(abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self { abbreviations: abbreviations.into_iter().map(|a| a.as_ref().trim().to_lowercase()).collect() }
    }

    pub fn segment(&self, text: &str) -> Vec<Sentence> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut sentences = Vec::new();
        let mut start: Option<usize> = None;
        let mut i = 0;

        while i < chars.len() {
            let (byte, c) = chars[i];
            if start.is_none() && !c.is_whitespace() {
                start = Some(byte);
            }
            if !is_terminal(c) {
                i += 1;
                continue;
            }
            let mut last = i;
            while last + 1 < chars.len() && (is_terminal(chars[last + 1].1) || is_closing(chars[last + 1].1)) {
                last += 1;
            }
            let mut next = last + 1;
            let had_space = next < chars.len() && chars[next].1.is_whitespace();
            while next < chars.len() && chars[next].1.is_whitespace() {
                next += 1;
            }
            while next < chars.len() && is_opening(chars[next].1) {
                next += 1;
            }
            let upper_follows = had_space && next < chars.len() && chars[next].1.is_uppercase();
            if upper_follows && !(c == '.' && self.ends_abbreviation(text, byte)) {
                let end = chars[last].0 + chars[last].1.len_utf8();
                if let Some(s) = start.take() {
                    sentences.push(make_sentence(text, s, end, sentences.len()));
                }
            }
            i = last + 1;
        }

        if let Some(s) = start {
            let end = text.trim_end().len();
            if end > s {
                sentences.push(make_sentence(text, s, end, sentences.len()));
            }
        }
        sentences
    }

    /// Whether the period at `period` closes an abbreviation or ordinal.
    fn ends_abbreviation(&self, text: &str, period: usize) -> bool {
        let head = &text[..period + 1];
        let word_start = head.rfind(char::is_whitespace).map(|p| p + head[p..].chars().next().unwrap().len_utf8()).unwrap_or(0);
        let word = head[word_start..].trim_start_matches(is_opening).to_lowercase();
        let stem = word.trim_end_matches('.');
        if stem.is_empty() {
            return false;
        }
        if stem.chars().all(|c| c.is_ascii_digit()) {
            return true;
        }
        if self.abbreviations.contains(&word) {
            return true;
        }
        // two- and three-part forms like "z. B." or "i. d. R."
        let before = head[..word_start].trim_end();
        let mut parts = vec![word.clone()];
        let mut rest = before;
        for _ in 0..2 {
            let Some(prev) = rest.rsplit(char::is_whitespace).next().filter(|p| !p.is_empty()) else {
                break;
            };
            parts.insert(0, prev.trim_start_matches(is_opening).to_lowercase());
            if self.abbreviations.contains(&parts.join(" ")) {
                return true;
            }
            rest = rest[..rest.len() - prev.len()].trim_end();
        }
        false
    }
}

fn make_sentence(text: &str, start: usize, end: usize, index: usize) -> Sentence {
    Sentence { text: text[start..end].to_string(), index, char_span: (start, end) }
}

/// Segments with the default German abbreviation list.
pub fn segment_sentences(text: &str) -> Vec<Sentence> {
    SentenceSegmenter::default().segment(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(text: &str) -> Vec<String> {
        segment_sentences(text).into_iter().map(|s| s.text).collect()
    }

    #[test]
    fn empty_input() {
        assert!(segment_sentences("").is_empty());
        assert!(segment_sentences("   \n ").is_empty());
    }

    #[test]
    fn two_terminal_periods() {
        assert_eq!(texts("A is B. C is D."), vec!["A is B.", "C is D."]);
    }

    #[test]
    fn lowercase_continuation_does_not_split() {
        assert_eq!(texts("Der Wert liegt bei 5.5 mmol. und mehr"), vec!["Der Wert liegt bei 5.5 mmol. und mehr"]);
    }

    #[test]
    fn question_and_exclamation() {
        assert_eq!(texts("Was tun? Bewegen! Jeden Tag."), vec!["Was tun?", "Bewegen!", "Jeden Tag."]);
    }

    #[test]
    fn ordinal_numbers_do_not_split() {
        assert_eq!(texts("Am 3. Mai beginnt der Kurs. Er dauert lange."), vec!["Am 3. Mai beginnt der Kurs.", "Er dauert lange."]);
    }

    #[test]
    fn closing_quotes_stay_with_sentence() {
        assert_eq!(texts("Sie sagte: „Gut.“ Dann ging sie."), vec!["Sie sagte: „Gut.“", "Dann ging sie."]);
    }

    #[test]
    fn abbreviation_list_is_configurable() {
        let seg = SentenceSegmenter::new(["dr."]);
        let s = seg.segment("Fragen Sie Dr. Meier. Er hilft.");
        assert_eq!(s.len(), 2);
        let none = SentenceSegmenter::new(Vec::<String>::new());
        assert_eq!(none.segment("Fragen Sie Dr. Meier. Er hilft.").len(), 3);
    }

    #[test]
    fn spans_and_indices() {
        let text = "  Erste Aussage.  Zweite Aussage!\n\nDritte";
        let s = segment_sentences(text);
        assert_eq!(s.len(), 3);
        for (i, sentence) in s.iter().enumerate() {
            assert_eq!(sentence.index, i);
            assert_eq!(&text[sentence.char_span.0..sentence.char_span.1], sentence.text);
        }
        assert_eq!(s[2].text, "Dritte");
    }
}
