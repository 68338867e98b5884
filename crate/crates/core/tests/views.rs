use std::collections::{BTreeMap, BTreeSet};

use healthlens_core::corpus::{ingest_document, Document};
use healthlens_core::text::{fit_lda, tokenize, LdaConfig, TextPipeline};
use healthlens_core::views::{
    build_history_cloud, build_word_cloud, compute_tilebar, document_preview, expand_snippet, find_snippets, group_by_section,
    layout_list, layout_wordle, rank_images, Canvas, CloudEntry, Direction, HistoryMode, LayoutConfig, Palette, WordCloudSpec,
};
use proptest::prelude::*;

const FIXTURE: &str = include_str!("../fixtures/diabetes_brochure.json");

fn fixture() -> Document {
    ingest_document(FIXTURE).unwrap()
}

fn spec_from(weights: &[(String, f64, usize)]) -> WordCloudSpec<f64> {
    WordCloudSpec {
        k: 5,
        entries: weights
            .iter()
            .map(|(term, weight, topic)| CloudEntry {
                term: term.clone(),
                weight: *weight,
                topic_id: *topic,
                dominant_topic: *topic,
                click_count: 0,
            })
            .collect(),
    }
}

fn overlaps(a: (f64, f64, f64, f64), b: (f64, f64, f64, f64)) -> bool {
    let (ax0, ay0, ax1, ay1) = (a.0, a.1, a.0 + a.2, a.1 + a.3);
    let (bx0, by0, bx1, by1) = (b.0, b.1, b.0 + b.2, b.1 + b.3);
    ax0.max(bx0) < ax1.min(bx1) && ay0.max(by0) < ay1.min(by1)
}

fn cloud_entries() -> impl Strategy<Value = Vec<(String, f64, usize)>> {
    prop::collection::vec(("[a-zäöü]{2,12}", 0.001f64..1.0, 0usize..5), 1..80)
}

#[test]
fn fixture_cloud_layout() {
    let doc = fixture();
    let pipeline = TextPipeline::german();
    let chapter = doc.chapter(2).unwrap();
    let model = fit_lda(2, &pipeline.chapter_documents(chapter), &LdaConfig::<f64>::new(3).with_iterations(200)).unwrap();
    let spec = build_word_cloud(&model, 8);
    assert!(spec.len() <= 24 && !spec.is_empty());
    let canvas = Canvas { width: 800.0, height: 500.0 };
    let layout = layout_wordle(&spec, canvas, 0, &LayoutConfig::default()).unwrap();
    assert_eq!(layout.words.len() + layout.dropped.len(), spec.len());
    let svg = healthlens_core::views::svg::cloud_svg(&layout, &Palette::default());
    assert_eq!(svg.matches("<text").count(), layout.words.len());
}

#[test]
fn list_layout_orders_each_column_by_weight() {
    let entries: Vec<(String, f64, usize)> = (0..30).map(|i| (format!("t{i:02}"), ((i * 37) % 11) as f64 + 0.5, i % 3)).collect();
    let spec = spec_from(&entries);
    let layout = layout_list(&spec, &LayoutConfig::default()).unwrap();
    assert_eq!(layout.words.len(), 30);
    for topic in 0..3 {
        let mut column: Vec<_> = layout.words.iter().filter(|w| w.topic_id == topic).collect();
        column.sort_by(|a, b| a.rect.y.total_cmp(&b.rect.y));
        let got: Vec<&str> = column.iter().map(|w| w.term.as_str()).collect();

        let mut oracle: Vec<&(String, f64, usize)> = entries.iter().filter(|e| e.2 == topic).collect();
        oracle.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let want: Vec<&str> = oracle.iter().map(|e| e.0.as_str()).collect();
        assert_eq!(got, want, "topic {topic}");
    }
    let xs: Vec<f64> = (0..3).map(|t| layout.words.iter().find(|w| w.topic_id == t).unwrap().rect.x).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn history_clouds() {
    let spec = spec_from(&[("zucker".into(), 0.5, 0), ("insulin".into(), 0.9, 1), ("blut".into(), 0.2, 1)]);
    let clicks: BTreeMap<String, u32> = [("insulin".to_string(), 3), ("pumpe".to_string(), 1)].into();
    let explored = build_history_cloud(&clicks, &spec, HistoryMode::Explored);
    let weights: BTreeMap<&str, f64> = explored.entries.iter().map(|e| (e.term.as_str(), e.weight)).collect();
    assert_eq!(weights, BTreeMap::from([("insulin", 3.0), ("pumpe", 1.0)]));

    let unexplored = build_history_cloud(&clicks, &spec, HistoryMode::Unexplored);
    let terms: Vec<&str> = unexplored.entries.iter().map(|e| e.term.as_str()).collect();
    assert_eq!(terms, ["blut", "zucker"]);
}

#[test]
fn tilebar_on_fixture_counts_lemma_occurrences() {
    let doc = fixture();
    let pipeline = TextPipeline::german();
    let grid = compute_tilebar(&doc, "Insulin", 50, &pipeline);
    assert_eq!(grid.rows.len(), 7);
    for (chapter, row) in doc.chapters.iter().zip(&grid.rows) {
        let oracle = chapter
            .sections
            .iter()
            .flat_map(|s| tokenize(&s.text))
            .filter(|t| matches!(t.surface.as_str(), "Insulin" | "Insulins" | "insulin"))
            .count() as u64;
        assert_eq!(row.iter().map(|&c| c as u64).sum::<u64>(), oracle, "chapter {}", chapter.number);
        assert_eq!(row.len(), chapter.token_count().div_ceil(50));
    }
    assert!(grid.max_frequency > 0);
    let absent = compute_tilebar(&doc, "Quantenphysik", 50, &pipeline);
    assert_eq!(absent.total(), 0);
    assert_eq!(absent.intensity(0), None);
}

#[test]
fn snippets_on_fixture() {
    let doc = fixture();
    let pipeline = TextPipeline::german();
    let hits = find_snippets(&doc, "Insulin", &pipeline);
    assert!(!hits.is_empty());
    for hit in &hits {
        let section = hit.section(&doc).unwrap();
        assert_eq!(hit.width(), 1);
        for h in &hit.highlights {
            let word = &section.text[h.span.0..h.span.1];
            assert_eq!(pipeline.query_key(word), "insulin", "{word}");
        }
    }
    let groups = group_by_section(&hits);
    assert_eq!(groups.iter().map(|g| g.hits.len()).sum::<usize>(), hits.len());
}

#[test]
fn images_and_preview() {
    let doc = fixture();
    let ranking = rank_images(doc.chapter(6).unwrap());
    assert_eq!(ranking.images.len(), 7);
    assert!(ranking.images.windows(2).all(|w| w[0].tier <= w[1].tier));
    let clicked: BTreeSet<String> = [ranking.images[0].image_id.clone()].into();
    assert_eq!(ranking.clone().retain_clicked(&clicked).images.len(), 1);

    let preview = document_preview(&doc, 10, &TextPipeline::german());
    assert_eq!(preview.chapter_count, 7);
    assert_eq!(preview.histogram.len(), 10);
    assert!(preview.histogram.windows(2).all(|w| w[0].count >= w[1].count));
}

fn synthetic_doc(sentences: &[Vec<&str>]) -> Document {
    let text: Vec<String> = sentences.iter().map(|s| format!("Dort {}.", s.join(" "))).collect();
    let src = serde_json::json!({
        "id": "s", "title": "S",
        "chapters": [{"number": 1, "title": "K", "sections": [{"heading": "H", "paragraphs": [text.join(" ")]}]}]
    });
    ingest_document(&src.to_string()).unwrap()
}

fn sentence_words() -> impl Strategy<Value = Vec<Vec<&'static str>>> {
    let word = prop::sample::select(vec!["Apfel", "Birne", "kern", "Saft", "apfel", "Baum"]);
    prop::collection::vec(prop::collection::vec(word, 1..8), 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn wordle_placements_are_disjoint_and_inside(entries in cloud_entries(), seed in any::<u64>(), w in 200.0f64..900.0, h in 150.0f64..600.0) {
        let spec = spec_from(&entries);
        let canvas = Canvas { width: w, height: h };
        let Ok(layout) = layout_wordle(&spec, canvas, seed, &LayoutConfig::default()) else { return Ok(()); };
        prop_assert_eq!(layout.words.len() + layout.dropped.len(), entries.len());
        let boxes: Vec<(f64, f64, f64, f64)> = layout.words.iter().map(|p| (p.rect.x, p.rect.y, p.rect.w, p.rect.h)).collect();
        for (i, a) in boxes.iter().enumerate() {
            prop_assert!(a.0 >= 0.0 && a.1 >= 0.0 && a.0 + a.2 <= w && a.1 + a.3 <= h);
            for b in &boxes[i + 1..] {
                prop_assert!(!overlaps(*a, *b), "{:?} overlaps {:?}", a, b);
            }
        }
        for a in &layout.words {
            for b in &layout.words {
                if a.weight > b.weight {
                    prop_assert!(a.font_size >= b.font_size);
                }
            }
            prop_assert!(a.font_size >= 12.0 && a.font_size <= 48.0);
        }
        let again = layout_wordle(&spec, canvas, seed, &LayoutConfig::default()).unwrap();
        prop_assert_eq!(again, layout);
    }

    #[test]
    fn tilebar_conserves_occurrences(sentences in sentence_words(), size in 1usize..30) {
        let doc = synthetic_doc(&sentences);
        let grid = compute_tilebar(&doc, "apfel", size, &TextPipeline::german());
        let oracle = sentences.iter().flatten().filter(|w| w.eq_ignore_ascii_case("apfel")).count() as u64;
        prop_assert_eq!(grid.total(), oracle);
        let tokens: usize = sentences.iter().map(|s| s.len() + 1).sum();
        prop_assert_eq!(grid.rows[0].len(), tokens.div_ceil(size));
    }

    #[test]
    fn snippets_are_sound_and_complete(sentences in sentence_words()) {
        let doc = synthetic_doc(&sentences);
        let pipeline = TextPipeline::german();
        let hits = find_snippets(&doc, "Apfel", &pipeline);
        let oracle: Vec<usize> = sentences
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|w| w.eq_ignore_ascii_case("apfel")))
            .map(|(i, _)| i)
            .collect();
        prop_assert_eq!(hits.iter().map(|h| h.center_sentence_index).collect::<Vec<_>>(), oracle);
        let section = &doc.chapters[0].sections[0];
        for hit in &hits {
            for h in &hit.highlights {
                prop_assert!(section.text[h.span.0..h.span.1].eq_ignore_ascii_case("apfel"));
            }
            let count = sentences[hit.center_sentence_index].iter().filter(|w| w.eq_ignore_ascii_case("apfel")).count();
            prop_assert_eq!(hit.highlights.len(), count);

            let before = expand_snippet(&doc, hit, Direction::Before, &pipeline);
            let after = expand_snippet(&doc, &before, Direction::After, &pipeline);
            prop_assert!(before.window.0 + 1 >= hit.window.0 && before.window.1 == hit.window.1);
            prop_assert!(after.window.1 < sentences.len());
            prop_assert!(after.width() <= hit.width() + 2);
            prop_assert!(after.window.0 <= hit.center_sentence_index && hit.center_sentence_index <= after.window.1);
        }
    }
}
