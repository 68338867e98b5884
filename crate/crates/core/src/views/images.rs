use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::corpus::{Chapter, ImageAsset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedImage {
    pub image_id: String,
    pub uri: String,
    pub caption: Option<String>,
    /// 1: captioned structured content, 2: other captioned, 3: uncaptioned.
    pub tier: u8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRanking {
    pub images: Vec<RankedImage>,
}

impl ImageRanking {
    /// Keeps only images the user already opened (the history slider).
    pub fn retain_clicked(mut self, clicked: &BTreeSet<String>) -> Self {
        self.images.retain(|i| clicked.contains(&i.image_id));
        self
    }

    /// Slider page of `page_size` images.
    pub fn page(&self, page: usize, page_size: usize) -> &[RankedImage] {
        let size = page_size.max(1);
        let start = (page * size).min(self.images.len());
        &self.images[start..(start + size).min(self.images.len())]
    }
}

pub fn image_tier(image: &ImageAsset) -> u8 {
    match (&image.caption, image.structured) {
        (Some(_), true) => 1,
        (Some(_), false) => 2,
        (None, _) => 3,
    }
}

/// Orders a chapter's images by tier, keeping document order within a tier.
pub fn rank_images(chapter: &Chapter) -> ImageRanking {
    let mut images: Vec<RankedImage> = chapter
        .images
        .iter()
        .map(|i| RankedImage { image_id: i.id.clone(), uri: i.uri.clone(), caption: i.caption.clone(), tier: image_tier(i) })
        .collect();
    images.sort_by_key(|i| i.tier);
    ImageRanking { images }
}
