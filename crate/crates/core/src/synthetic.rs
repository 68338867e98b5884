//! Seeded generators for planted-topic corpora and interaction sequences.
//! Useful for benchmarks, demos and tests that need ground truth.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::provenance::{InteractionEvent, InteractionTriple, ProcessId, Taxonomy, ToolId};
use crate::scalar::Scalar;

/// A corpus sampled from known topic-word distributions.
#[derive(Clone, Debug)]
pub struct PlantedCorpus {
    pub vocabulary: Vec<String>,
    /// `topics[k][w]`, each row summing to one.
    pub topics: Vec<Vec<f64>>,
    pub documents: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug)]
pub struct PlantedConfig {
    pub topics: usize,
    pub vocabulary: usize,
    pub documents: usize,
    pub tokens_per_document: usize,
    /// Probability mass each topic puts on its own block of words.
    pub concentration: f64,
    /// Maximum number of topics mixed into one document.
    pub topics_per_document: usize,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            topics: 5,
            vocabulary: 50,
            documents: 200,
            tokens_per_document: 50,
            concentration: 0.9,
            topics_per_document: 2,
            seed: 7,
        }
    }
}

/// Topic `k` owns a contiguous block of the vocabulary and puts
/// `concentration` of its mass there, spreading the rest uniformly.
pub fn planted_corpus(cfg: &PlantedConfig) -> PlantedCorpus {
    assert!(cfg.topics > 0 && cfg.vocabulary >= cfg.topics, "need at least one word per topic");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let vocabulary: Vec<String> = (0..cfg.vocabulary).map(|w| format!("w{w:03}")).collect();
    let block = cfg.vocabulary / cfg.topics;
    let topics: Vec<Vec<f64>> = (0..cfg.topics)
        .map(|k| {
            let own = k * block..if k + 1 == cfg.topics { cfg.vocabulary } else { (k + 1) * block };
            let own_len = own.len() as f64;
            let rest = (cfg.vocabulary as f64 - own_len).max(1.0);
            (0..cfg.vocabulary)
                .map(|w| if own.contains(&w) { cfg.concentration / own_len } else { (1.0 - cfg.concentration) / rest })
                .collect()
        })
        .collect();
    let samplers: Vec<WeightedIndex<f64>> = topics.iter().map(|row| WeightedIndex::new(row).expect("positive weights")).collect();

    let documents = (0..cfg.documents)
        .map(|_| {
            let n = rng.gen_range(1..=cfg.topics_per_document.clamp(1, cfg.topics));
            let mixture: Vec<usize> = (0..n).map(|_| rng.gen_range(0..cfg.topics)).collect();
            (0..cfg.tokens_per_document)
                .map(|_| {
                    let k = mixture[rng.gen_range(0..mixture.len())];
                    vocabulary[samplers[k].sample(&mut rng)].clone()
                })
                .collect()
        })
        .collect();
    PlantedCorpus { vocabulary, topics, documents }
}

/// A random triple sequence drawn from the first `tools` and `processes`
/// entries of the taxonomy's enumeration.
pub fn random_triples<T: Scalar, R: Rng>(
    rng: &mut R,
    taxonomy: &Taxonomy,
    len: usize,
    tools: usize,
    processes: usize,
) -> Vec<InteractionTriple<T>> {
    let tool_pool: Vec<ToolId> = taxonomy.enumerate_tools().into_iter().take(tools.max(1)).collect();
    let process_pool: Vec<ProcessId> = taxonomy.processes.iter().take(processes.max(1)).map(|p| ProcessId::new(p.name.clone())).collect();
    (0..len)
        .map(|_| InteractionTriple {
            src: tool_pool[rng.gen_range(0..tool_pool.len())],
            process: process_pool[rng.gen_range(0..process_pool.len())].clone(),
            tar: tool_pool[rng.gen_range(0..tool_pool.len())],
            duration_s: T::from_f64(rng.gen_range(1.0..30.0)).unwrap_or_else(T::one),
            ts_ms: 0,
        })
        .collect()
}

/// A timestamp-ordered event log for one session with durations of at
/// least one second.
pub fn random_events<T: Scalar, R: Rng>(
    rng: &mut R,
    taxonomy: &Taxonomy,
    session: &str,
    len: usize,
) -> Vec<InteractionEvent<T>> {
    let tools = taxonomy.enumerate_tools();
    let mut ts = 0u64;
    (0..len)
        .map(|_| {
            ts += rng.gen_range(500..20_000);
            let tool = tools[rng.gen_range(0..tools.len())];
            let process = &taxonomy.processes[rng.gen_range(0..taxonomy.processes.len())].name;
            let d = T::from_f64(rng.gen_range(1.0..20.0)).unwrap_or_else(T::one);
            InteractionEvent::new(session, ts, tool, process, d)
        })
        .collect()
}
