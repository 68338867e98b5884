use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use healthlens_core::corpus::{ingest_document, CorpusError, Document};
use healthlens_core::text::{fit_lda, LdaConfig, TextError, TextPipeline};
use healthlens_core::views::{
    build_word_cloud, document_preview, layout_list, layout_wordle, Canvas, DocumentPreview, LayoutConfig, ViewError,
};
use healthlens_core::{CloudLayout, TopicModel, WordCloudSpec};
use rayon::prelude::*;

use crate::config::ServiceConfig;

pub const PREVIEW_TERMS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum LibraryError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Corpus { path: PathBuf, source: CorpusError },
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("topic model for {doc} chapter {chapter}: {source}")]
    Model { doc: String, chapter: u32, source: TextError },
}

/// Everything precomputed for one chapter.
#[derive(Clone, Debug)]
pub struct ChapterViews {
    pub model: TopicModel,
    pub cloud: WordCloudSpec,
    pub wordle: Result<CloudLayout, String>,
    pub list: Result<CloudLayout, String>,
}

/// Documents plus per-chapter models and cloud layouts. Immutable once
/// built; re-ingestion means building a new store.
#[derive(Debug)]
pub struct LibraryStore {
    documents: BTreeMap<String, Document>,
    previews: Vec<DocumentPreview>,
    chapters: BTreeMap<(String, u32), ChapterViews>,
    pipeline: TextPipeline,
}

fn layout_error(e: ViewError) -> String {
    e.to_string()
}

impl LibraryStore {
    /// Loads every `*.json` file in `dir`, in file name order.
    pub fn load_dir(dir: &Path, config: &ServiceConfig) -> Result<Self, LibraryError> {
        let io = |source| LibraryError::Io { path: dir.to_owned(), source };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        paths.sort();
        let mut documents = Vec::with_capacity(paths.len());
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(|source| LibraryError::Io { path: path.clone(), source })?;
            let doc = ingest_document(&text).map_err(|source| LibraryError::Corpus { path: path.clone(), source })?;
            documents.push(doc);
        }
        Self::build(documents, config)
    }

    pub fn build(documents: Vec<Document>, config: &ServiceConfig) -> Result<Self, LibraryError> {
        let pipeline = TextPipeline::german();
        let mut by_id = BTreeMap::new();
        for doc in documents {
            if by_id.contains_key(&doc.id) {
                return Err(LibraryError::DuplicateId(doc.id));
            }
            by_id.insert(doc.id.clone(), doc);
        }

        let lda = LdaConfig::new(config.topics).with_seed(config.seed).with_iterations(config.iterations);
        let layout = LayoutConfig::default();
        let canvas = Canvas { width: config.canvas_width, height: config.canvas_height };
        let jobs: Vec<(&Document, u32)> =
            by_id.values().flat_map(|d| d.chapters.iter().map(move |c| (d, c.number))).collect();
        let chapters = jobs
            .par_iter()
            .map(|&(doc, number)| {
                let chapter = doc.chapter(number).expect("chapter listed above");
                let model = fit_lda(number, &pipeline.chapter_documents(chapter), &lda)
                    .map_err(|source| LibraryError::Model { doc: doc.id.clone(), chapter: number, source })?;
                let cloud = build_word_cloud(&model, config.terms_per_topic);
                let wordle = layout_wordle(&cloud, canvas, config.seed, &layout).map_err(layout_error);
                let list = layout_list(&cloud, &layout).map_err(layout_error);
                Ok(((doc.id.clone(), number), ChapterViews { model, cloud, wordle, list }))
            })
            .collect::<Result<BTreeMap<_, _>, LibraryError>>()?;

        let previews = by_id.values().map(|d| document_preview(d, PREVIEW_TERMS, &pipeline)).collect();
        Ok(Self { documents: by_id, previews, chapters, pipeline })
    }

    pub fn previews(&self) -> &[DocumentPreview] {
        &self.previews
    }

    pub fn document(&self, id: &str) -> Option<&Document> {
        self.documents.get(id)
    }

    pub fn documents(&self) -> impl Iterator<Item = &Document> {
        self.documents.values()
    }

    pub fn chapter_views(&self, id: &str, chapter: u32) -> Option<&ChapterViews> {
        self.chapters.get(&(id.to_string(), chapter))
    }

    pub fn pipeline(&self) -> &TextPipeline {
        &self.pipeline
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}
