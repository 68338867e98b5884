use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::token::{Pos, Token};
use crate::scalar::{cmp_desc, Scalar};

/// Sparse term weights. Keys are non-empty, weights non-negative.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "T: Scalar")]
pub struct TermVector<T> {
    entries: BTreeMap<String, T>,
}

impl<T: Scalar> TermVector<T> {
    pub fn new() -> Self {
        Self { entries: BTreeMap::new() }
    }

    /// Adds `weight` to `term`. Empty terms and negative or NaN weights are ignored.
    pub fn add(&mut self, term: &str, weight: T) {
        if term.is_empty() || !(weight >= T::zero()) {
            return;
        }
        let slot = self.entries.entry(term.to_string()).or_insert_with(T::zero);
        *slot = *slot + weight;
    }

    pub fn get(&self, term: &str) -> Option<T> {
        self.entries.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> T {
        self.entries.values().copied().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, T)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Entries by descending weight, ties broken lexicographically by term.
    pub fn ranked(&self) -> Vec<(String, T)> {
        let mut out: Vec<(String, T)> = self.entries.iter().map(|(k, v)| (k.clone(), *v)).collect();
        out.sort_by(|a, b| cmp_desc(a.1, b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Returns a copy scaled so the weights sum to one. Empty or zero-mass
    /// vectors are returned unchanged.
    pub fn normalized(&self) -> Self {
        let total = self.total();
        if total <= T::zero() {
            return self.clone();
        }
        Self { entries: self.entries.iter().map(|(k, v)| (k.clone(), *v / total)).collect() }
    }
}

impl<T: Scalar> FromIterator<(String, T)> for TermVector<T> {
    fn from_iter<I: IntoIterator<Item = (String, T)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (term, weight) in iter {
            v.add(&term, weight);
        }
        v
    }
}

/// Raw frequencies of noun lemmas (lowercased).
pub fn noun_terms<T: Scalar>(tokens: &[Token]) -> TermVector<T> {
    let mut v = TermVector::new();
    for t in tokens.iter().filter(|t| t.pos == Pos::Noun) {
        v.add(&t.term_key(), T::one());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{lemmatize_and_tag, tokenize, Lexicon};

    #[test]
    fn no_nouns_gives_empty_vector() {
        let toks = lemmatize_and_tag(tokenize("schnell und gut"), &Lexicon::new());
        assert!(noun_terms::<f64>(&toks).is_empty());
    }

    #[test]
    fn counts_noun_lemmas() {
        let mut lex = Lexicon::new();
        lex.insert("Wert", "Wert", Pos::Noun);
        lex.insert("Zucker", "Zucker", Pos::Noun);
        let toks = lemmatize_and_tag(tokenize("Wert Wert Zucker"), &lex);
        let v = noun_terms::<f64>(&toks);
        assert_eq!(v.get("wert"), Some(2.0));
        assert_eq!(v.get("zucker"), Some(1.0));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn rejects_empty_terms_and_negative_weights() {
        let mut v = TermVector::<f64>::new();
        v.add("", 1.0);
        v.add("a", -1.0);
        v.add("b", f64::NAN);
        assert!(v.is_empty());
    }

    #[test]
    fn ranking_breaks_ties_lexicographically() {
        let v: TermVector<f64> = [("b".to_string(), 1.0), ("a".to_string(), 1.0), ("c".to_string(), 2.0)].into_iter().collect();
        let ranked: Vec<String> = v.ranked().into_iter().map(|(t, _)| t).collect();
        assert_eq!(ranked, vec!["c", "a", "b"]);
    }
}
