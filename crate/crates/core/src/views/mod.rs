//! Visual abstractions computed from the corpus and topic models.

mod cloud;
mod images;
mod layout;
mod preview;
mod snippets;
pub mod svg;
mod tilebar;

pub use cloud::{build_history_cloud, build_word_cloud, CloudEntry, HistoryMode, WordCloudSpec, DEFAULT_TERMS_PER_TOPIC};
pub use images::{image_tier, rank_images, ImageRanking, RankedImage};
pub use layout::{layout_list, layout_wordle, Canvas, CloudLayout, FontScale, LayoutConfig, PlacedWord, Rect};
pub use preview::{document_preview, DocumentPreview, TermCount};
pub use snippets::{expand_snippet, find_snippets, group_by_section, Direction, Highlight, SnippetGroup, SnippetHit};
pub use svg::Palette;
pub use tilebar::{compute_tilebar, TileBarGrid};

#[derive(Debug, thiserror::Error)]
pub enum ViewError {
    #[error("canvas too small for the first word `{term}`")]
    CanvasTooSmall { term: String },
    #[error("canvas dimensions must be positive")]
    InvalidCanvas,
    #[error("word cloud spec has no entries")]
    EmptySpec,
}
