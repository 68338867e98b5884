use std::collections::BTreeSet;

use healthlens_core::corpus::ingest_document;
use healthlens_core::synthetic::{planted_corpus, PlantedConfig};
use healthlens_core::text::{fit_lda, noun_terms, tokenize, LdaConfig, Pos, StopwordList, TextPipeline};
use proptest::prelude::*;

const FIXTURE: &str = include_str!("../fixtures/diabetes_brochure.json");

fn split_oracle(text: &str) -> Vec<String> {
    text.split(|c: char| !(c.is_alphanumeric() || c == '-'))
        .map(|w| w.trim_matches('-'))
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect()
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Pairs each true topic with a distinct learned topic, best cosine first.
fn greedy_alignment(truth: &[Vec<f64>], learned: &[Vec<f64>]) -> Vec<f64> {
    let mut scores: Vec<(f64, usize, usize)> = Vec::new();
    for (i, t) in truth.iter().enumerate() {
        for (j, l) in learned.iter().enumerate() {
            scores.push((cosine(t, l), i, j));
        }
    }
    scores.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (mut used_t, mut used_l) = (BTreeSet::new(), BTreeSet::new());
    let mut out = vec![0.0; truth.len()];
    for (s, i, j) in scores {
        if used_t.contains(&i) || used_l.contains(&j) {
            continue;
        }
        used_t.insert(i);
        used_l.insert(j);
        out[i] = s;
    }
    out
}

#[test]
fn tokenizer_matches_split_oracle_on_fixture() {
    let doc = ingest_document(FIXTURE).unwrap();
    for section in doc.chapters.iter().flat_map(|c| c.sections.iter()) {
        let got: Vec<String> = tokenize(&section.text).into_iter().map(|t| t.surface).collect();
        assert_eq!(got, split_oracle(&section.text));
    }
}

#[test]
fn hyphenated_compounds_stay_whole() {
    let got: Vec<String> = tokenize("Typ-2-Diabetes - ein Thema -- für alle.").into_iter().map(|t| t.surface).collect();
    assert_eq!(got, ["Typ-2-Diabetes", "ein", "Thema", "für", "alle"]);
}

#[test]
fn stopword_removal_is_set_difference() {
    let pipeline = TextPipeline::german();
    let stop = StopwordList::german();
    let doc = ingest_document(FIXTURE).unwrap();
    for section in doc.chapters.iter().flat_map(|c| c.sections.iter()) {
        let kept: Vec<String> = pipeline.content_tokens(&section.text).into_iter().map(|t| t.surface).collect();
        let oracle: Vec<String> = pipeline
            .tag(&section.text)
            .into_iter()
            .filter(|t| !stop.contains(&t.lemma.to_lowercase()))
            .map(|t| t.surface)
            .collect();
        assert_eq!(kept, oracle);
    }
}

#[test]
fn hand_annotated_nouns() {
    let pipeline = TextPipeline::german();
    let sentence = "Das Hormon Insulin sorgt dafür, dass der Zucker aus dem Blut in die Zellen gelangt.";
    let nouns: BTreeSet<String> =
        pipeline.content_tokens(sentence).into_iter().filter(|t| t.pos == Pos::Noun).map(|t| t.term_key()).collect();
    let expected: BTreeSet<String> = ["hormon", "insulin", "zucker", "blut", "zelle"].into_iter().map(String::from).collect();
    assert_eq!(nouns, expected);
    let verbs: Vec<String> = pipeline.tag(sentence).into_iter().filter(|t| t.pos == Pos::Verb).map(|t| t.lemma).collect();
    assert_eq!(verbs, ["sorgen", "gelangen"]);
}

#[test]
fn noun_counts_match_counting_oracle() {
    let pipeline = TextPipeline::german();
    let doc = ingest_document(FIXTURE).unwrap();
    let vector = pipeline.document_nouns::<f64>(&doc);
    let mut oracle = std::collections::BTreeMap::<String, f64>::new();
    for section in doc.chapters.iter().flat_map(|c| c.sections.iter()) {
        for t in pipeline.content_tokens(&section.text) {
            if t.pos == Pos::Noun {
                *oracle.entry(t.lemma.to_lowercase()).or_default() += 1.0;
            }
        }
    }
    assert_eq!(vector.len(), oracle.len());
    for (term, count) in &oracle {
        assert_eq!(vector.get(term), Some(*count), "{term}");
    }
    assert!(vector.get("insulin").unwrap() >= 10.0);
}

#[test]
fn planted_topics_are_recovered() {
    let corpus = planted_corpus(&PlantedConfig::default());
    let model = fit_lda(1, &corpus.documents, &LdaConfig::<f64>::new(5).with_seed(11)).unwrap();
    let learned: Vec<Vec<f64>> =
        model.topics.iter().map(|t| corpus.vocabulary.iter().map(|w| t.get(w).unwrap_or(0.0)).collect()).collect();
    let scores = greedy_alignment(&corpus.topics, &learned);
    assert!(scores.iter().all(|&s| s >= 0.7), "alignment {scores:?}");

    for topic in &model.topics {
        assert!((topic.total() - 1.0).abs() < 1e-9);
    }
    assert!((model.doc_topic.iter().sum::<f64>() - 1.0).abs() < 1e-9);

    let ll = &model.log_likelihood;
    let head: f64 = ll[..10].iter().sum::<f64>() / 10.0;
    let tail: f64 = ll[ll.len() - 10..].iter().sum::<f64>() / 10.0;
    assert!(tail >= head, "log-likelihood fell from {head} to {tail}");
}

#[test]
fn fixture_chapters_fit() {
    let pipeline = TextPipeline::german();
    let doc = ingest_document(FIXTURE).unwrap();
    for chapter in &doc.chapters {
        let docs = pipeline.chapter_documents(chapter);
        let model = fit_lda(chapter.number, &docs, &LdaConfig::<f64>::new(3).with_iterations(100)).unwrap();
        assert_eq!(model.topics.len(), 3);
        assert_eq!(model.document_topics.len(), chapter.sections.len());
        let vocab: BTreeSet<&String> = docs.iter().flatten().collect();
        assert!(model.topics.iter().all(|t| t.len() == vocab.len()));
    }
}

proptest! {
    #[test]
    fn tokens_match_oracle(text in "[a-zA-ZäöüßÄÖÜ0-9 ,.;!?()\"-]{0,120}") {
        let got: Vec<String> = tokenize(&text).into_iter().map(|t| t.surface).collect();
        prop_assert_eq!(got, split_oracle(&text));
    }

    #[test]
    fn token_spans_point_at_surfaces(text in "\\PC{0,80}") {
        for (i, t) in tokenize(&text).iter().enumerate() {
            prop_assert_eq!(t.index, i);
            prop_assert_eq!(&text[t.span.0..t.span.1], t.surface.as_str());
        }
    }

    #[test]
    fn noun_vector_total_equals_noun_count(words in prop::collection::vec("[A-Z][a-z]{1,6}|[a-z]{2,6}", 0..40)) {
        let pipeline = TextPipeline::german();
        let tokens = pipeline.content_tokens(&words.join(" "));
        let nouns = tokens.iter().filter(|t| t.pos == Pos::Noun).count();
        prop_assert_eq!(noun_terms::<f64>(&tokens).total(), nouns as f64);
    }
}
