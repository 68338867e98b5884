//! Collapsed Gibbs sampling for Latent Dirichlet Allocation.
//!
//! One model is fit per chapter; the chapter's sections are the documents.
//! The chain is sequential and driven by a seeded ChaCha generator, so a fit
//! is bit-identical for identical input, configuration and seed.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::terms::TermVector;
use super::TextError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LdaConfig<T> {
    pub k: usize,
    /// Symmetric document-topic prior.
    pub alpha: T,
    /// Symmetric topic-word prior.
    pub beta: T,
    pub iterations: usize,
    pub seed: u64,
}

impl<T: Scalar> LdaConfig<T> {
    /// `alpha = 50 / k`, `beta = 0.01`, 500 sweeps, seed 0.
    pub fn new(k: usize) -> Self {
        Self {
            k,
            alpha: T::lit(50.0) / T::from_count(k.max(1)),
            beta: T::lit(0.01),
            iterations: 500,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_alpha(mut self, alpha: T) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: T) -> Self {
        self.beta = beta;
        self
    }

    pub fn validate(&self) -> Result<(), TextError> {
        if self.k == 0 {
            return Err(TextError::InvalidConfig("k must be at least 1".into()));
        }
        if self.iterations == 0 {
            return Err(TextError::InvalidConfig("iterations must be at least 1".into()));
        }
        if !(self.alpha > T::zero()) || !(self.beta > T::zero()) {
            return Err(TextError::InvalidConfig("alpha and beta must be positive".into()));
        }
        Ok(())
    }
}

impl<T: Scalar> Default for LdaConfig<T> {
    fn default() -> Self {
        Self::new(5)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct TopicModel<T> {
    pub chapter_number: u32,
    pub k: usize,
    /// Topic-word distributions, each summing to one.
    pub topics: Vec<TermVector<T>>,
    /// Topic mixture of the chapter as a whole.
    pub doc_topic: Vec<T>,
    /// Per-document (section) topic mixtures.
    pub document_topics: Vec<Vec<T>>,
    /// Collapsed joint log-likelihood after every sweep.
    pub log_likelihood: Vec<T>,
    pub config: LdaConfig<T>,
}

impl<T: Scalar> TopicModel<T> {
    /// Highest-weighted `n` terms of a topic, ties broken by term.
    pub fn top_terms(&self, topic: usize, n: usize) -> Result<Vec<(String, T)>, TextError> {
        let vector = self.topics.get(topic).ok_or(TextError::IndexOutOfRange { index: topic, len: self.k })?;
        if n == 0 {
            return Err(TextError::InvalidConfig("n must be at least 1".into()));
        }
        let mut ranked = vector.ranked();
        ranked.truncate(n);
        Ok(ranked)
    }

    /// Topic in which `term` has its maximal weight (lowest index on ties).
    pub fn dominant_topic(&self, term: &str) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for (i, topic) in self.topics.iter().enumerate() {
            if let Some(w) = topic.get(term) {
                if best.is_none_or(|(_, b)| w > b) {
                    best = Some((i, w));
                }
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Free-function form of [`TopicModel::top_terms`].
pub fn top_terms<T: Scalar>(model: &TopicModel<T>, topic: usize, n: usize) -> Result<Vec<(String, T)>, TextError> {
    model.top_terms(topic, n)
}

struct Counts {
    k: usize,
    vocab: usize,
    doc_topic: Vec<u32>,
    topic_word: Vec<u32>,
    topic_total: Vec<u32>,
    doc_len: Vec<u32>,
}

impl Counts {
    fn adjust(&mut self, doc: usize, word: usize, topic: usize, up: bool) {
        let slots = [doc * self.k + topic, topic * self.vocab + word];
        if up {
            self.doc_topic[slots[0]] += 1;
            self.topic_word[slots[1]] += 1;
            self.topic_total[topic] += 1;
        } else {
            self.doc_topic[slots[0]] -= 1;
            self.topic_word[slots[1]] -= 1;
            self.topic_total[topic] -= 1;
        }
    }

    fn log_likelihood(&self, alpha: f64, beta: f64) -> f64 {
        let k = self.k as f64;
        let v = self.vocab as f64;
        let mut ll = 0.0;
        let word_norm = ln_gamma(v * beta) - v * ln_gamma(beta);
        for t in 0..self.k {
            ll += word_norm - ln_gamma(self.topic_total[t] as f64 + v * beta);
            for w in 0..self.vocab {
                ll += ln_gamma(self.topic_word[t * self.vocab + w] as f64 + beta);
            }
        }
        let doc_norm = ln_gamma(k * alpha) - k * ln_gamma(alpha);
        for (d, len) in self.doc_len.iter().enumerate() {
            ll += doc_norm - ln_gamma(*len as f64 + k * alpha);
            for t in 0..self.k {
                ll += ln_gamma(self.doc_topic[d * self.k + t] as f64 + alpha);
            }
        }
        ll
    }
}

/// Fits a topic model to a chapter whose documents are given as term lists.
pub fn fit_lda<T: Scalar>(chapter_number: u32, documents: &[Vec<String>], config: &LdaConfig<T>) -> Result<TopicModel<T>, TextError> {
    config.validate()?;
    let vocabulary: Vec<String> =
        documents.iter().flatten().filter(|t| !t.is_empty()).cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if documents.is_empty() || vocabulary.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    let word_ids: Vec<Vec<usize>> = documents
        .iter()
        .map(|doc| doc.iter().filter_map(|t| vocabulary.binary_search(t).ok()).collect())
        .collect();

    let k = config.k;
    let vocab = vocabulary.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut counts = Counts {
        k,
        vocab,
        doc_topic: vec![0; documents.len() * k],
        topic_word: vec![0; k * vocab],
        topic_total: vec![0; k],
        doc_len: word_ids.iter().map(|d| d.len() as u32).collect(),
    };
    let mut assignments: Vec<Vec<usize>> = Vec::with_capacity(word_ids.len());
    for (d, doc) in word_ids.iter().enumerate() {
        let mut z = Vec::with_capacity(doc.len());
        for &w in doc {
            let topic = rng.gen_range(0..k);
            counts.adjust(d, w, topic, true);
            z.push(topic);
        }
        assignments.push(z);
    }

    let alpha = config.alpha;
    let beta = config.beta;
    let vbeta = beta * T::from_count(vocab);
    let mut weights = vec![T::zero(); k];
    let mut log_likelihood = Vec::with_capacity(config.iterations);
    let (alpha64, beta64) = (alpha.to_f64_lossy(), beta.to_f64_lossy());

    for _ in 0..config.iterations {
        for (d, doc) in word_ids.iter().enumerate() {
            for (i, &w) in doc.iter().enumerate() {
                let old = assignments[d][i];
                counts.adjust(d, w, old, false);
                let mut total = T::zero();
                for (t, slot) in weights.iter_mut().enumerate() {
                    let ndk = T::from_u32(counts.doc_topic[d * k + t]).unwrap_or_else(T::zero);
                    let nkw = T::from_u32(counts.topic_word[t * vocab + w]).unwrap_or_else(T::zero);
                    let nk = T::from_u32(counts.topic_total[t]).unwrap_or_else(T::zero);
                    total = total + (ndk + alpha) * (nkw + beta) / (nk + vbeta);
                    *slot = total;
                }
                let u = T::lit(rng.gen::<f64>()) * total;
                let new = weights.iter().position(|&c| u < c).unwrap_or(k - 1);
                counts.adjust(d, w, new, true);
                assignments[d][i] = new;
            }
        }
        log_likelihood.push(T::lit(counts.log_likelihood(alpha64, beta64)));
    }

    let topics = (0..k)
        .map(|t| {
            let denom = T::from_u32(counts.topic_total[t]).unwrap_or_else(T::zero) + vbeta;
            vocabulary
                .iter()
                .enumerate()
                .map(|(w, term)| {
                    let nkw = T::from_u32(counts.topic_word[t * vocab + w]).unwrap_or_else(T::zero);
                    (term.clone(), (nkw + beta) / denom)
                })
                .collect::<TermVector<T>>()
        })
        .collect();

    let kalpha = alpha * T::from_count(k);
    let total_tokens = T::from_count(counts.doc_len.iter().map(|&n| n as usize).sum());
    let doc_topic = (0..k)
        .map(|t| (T::from_u32(counts.topic_total[t]).unwrap_or_else(T::zero) + alpha) / (total_tokens + kalpha))
        .collect();
    let document_topics = (0..documents.len())
        .map(|d| {
            let len = T::from_u32(counts.doc_len[d]).unwrap_or_else(T::zero);
            (0..k)
                .map(|t| (T::from_u32(counts.doc_topic[d * k + t]).unwrap_or_else(T::zero) + alpha) / (len + kalpha))
                .collect()
        })
        .collect();

    Ok(TopicModel { chapter_number, k, topics, doc_topic, document_topics, log_likelihood, config: config.clone() })
}
