use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::scalar::{cmp_desc, Scalar};
use crate::text::TopicModel;

/// Default number of terms each topic contributes to a chapter cloud.
pub const DEFAULT_TERMS_PER_TOPIC: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CloudEntry<T> {
    pub term: String,
    pub weight: T,
    /// Topic this entry was taken from; drives the Topic Bar toggles and color.
    pub topic_id: usize,
    /// Topic in which the term has its highest weight.
    pub dominant_topic: usize,
    pub click_count: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct WordCloudSpec<T> {
    /// Number of topics the entries' topic ids range over.
    pub k: usize,
    pub entries: Vec<CloudEntry<T>>,
}

impl<T: Scalar> WordCloudSpec<T> {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Entries of one topic, heaviest first.
    pub fn topic_entries(&self, topic: usize) -> Vec<&CloudEntry<T>> {
        let mut out: Vec<&CloudEntry<T>> = self.entries.iter().filter(|e| e.topic_id == topic).collect();
        out.sort_by(|a, b| cmp_desc(a.weight, b.weight).then_with(|| a.term.cmp(&b.term)));
        out
    }

    /// Copies click counts onto matching entries.
    pub fn with_clicks(mut self, clicks: &BTreeMap<String, u32>) -> Self {
        for entry in &mut self.entries {
            entry.click_count = clicks.get(&entry.term).copied().unwrap_or(0);
        }
        self
    }
}

/// Concatenates the top `n` terms of every topic. A term may appear once
/// per topic it ranks in.
pub fn build_word_cloud<T: Scalar>(model: &TopicModel<T>, terms_per_topic: usize) -> WordCloudSpec<T> {
    let mut entries = Vec::new();
    if terms_per_topic > 0 {
        for topic in 0..model.k {
            for (term, weight) in model.top_terms(topic, terms_per_topic).unwrap_or_default() {
                let dominant_topic = model.dominant_topic(&term).unwrap_or(topic);
                entries.push(CloudEntry { term, weight, topic_id: topic, dominant_topic, click_count: 0 });
            }
        }
    }
    WordCloudSpec { k: model.k, entries }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HistoryMode {
    /// Terms the user has clicked, sized by click count.
    #[default]
    Explored,
    /// Cloud terms the user has never clicked.
    Unexplored,
}

impl std::str::FromStr for HistoryMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "explored" => Ok(HistoryMode::Explored),
            "unexplored" => Ok(HistoryMode::Unexplored),
            other => Err(format!("unknown history mode `{other}`")),
        }
    }
}

/// Builds the History Word Cloud from per-term click counts.
///
/// `cloud` is the chapter's regular cloud; it supplies topic ids in explored
/// mode and the candidate terms in unexplored mode.
pub fn build_history_cloud<T: Scalar>(
    clicks: &BTreeMap<String, u32>,
    cloud: &WordCloudSpec<T>,
    mode: HistoryMode,
) -> WordCloudSpec<T> {
    let mut ranked: Vec<&CloudEntry<T>> = cloud.entries.iter().collect();
    ranked.sort_by(|a, b| cmp_desc(a.weight, b.weight).then_with(|| a.term.cmp(&b.term)));
    let heaviest = |term: &str| ranked.iter().find(|e| e.term == term).copied();

    let entries = match mode {
        HistoryMode::Explored => clicks
            .iter()
            .filter(|(_, &count)| count >= 1)
            .map(|(term, &count)| {
                let source = heaviest(term);
                CloudEntry {
                    term: term.clone(),
                    weight: T::from_u32(count).unwrap_or_else(T::zero),
                    topic_id: source.map_or(0, |e| e.topic_id),
                    dominant_topic: source.map_or(0, |e| e.dominant_topic),
                    click_count: count,
                }
            })
            .collect(),
        HistoryMode::Unexplored => {
            let mut seen = HashSet::new();
            let mut out: Vec<CloudEntry<T>> = ranked
                .iter()
                .filter(|e| clicks.get(&e.term).is_none_or(|&c| c == 0))
                .filter(|e| seen.insert(e.term.clone()))
                .map(|e| CloudEntry { click_count: 0, ..(*e).clone() })
                .collect();
            out.sort_by(|a, b| a.term.cmp(&b.term));
            out
        }
    };
    WordCloudSpec { k: cloud.k.max(1), entries }
}
