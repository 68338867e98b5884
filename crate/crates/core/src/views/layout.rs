//! Word cloud layouts: greedy spiral placement (Wordle) and the per-topic
//! list arrangement.
//!
//! Glyph boxes come from a fixed monospace metric (`char_width * font` per
//! character, `line_height * font` tall) rounded up to whole canvas units,
//! and positions are rounded to whole units, so box intersection tests are
//! exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cloud::WordCloudSpec;
use super::ViewError;
use crate::scalar::{cmp_desc, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Rect<T> {
    pub x: T,
    pub y: T,
    pub w: T,
    pub h: T,
}

impl<T: Scalar> Rect<T> {
    /// Open-interior overlap; boxes that only share an edge do not intersect.
    pub fn intersects(&self, other: &Rect<T>) -> bool {
        self.x < other.x + other.w && other.x < self.x + self.w && self.y < other.y + other.h && other.y < self.y + self.h
    }

    pub fn inside(&self, width: T, height: T) -> bool {
        self.x >= T::zero() && self.y >= T::zero() && self.x + self.w <= width && self.y + self.h <= height
    }

    fn inflate(&self, by: T) -> Rect<T> {
        Rect { x: self.x - by, y: self.y - by, w: self.w + by + by, h: self.h + by + by }
    }

    pub fn center(&self) -> (T, T) {
        let two = T::lit(2.0);
        (self.x + self.w / two, self.y + self.h / two)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Canvas<T> {
    pub width: T,
    pub height: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LayoutConfig<T> {
    pub min_font: T,
    pub max_font: T,
    pub char_width: T,
    pub line_height: T,
    /// Clearance kept around each placed box (Wordle only).
    pub padding: T,
    /// Radial distance between successive spiral turns.
    pub spiral_spacing: T,
    /// Angular increment per spiral step, in radians.
    pub spiral_step: T,
    /// Horizontal gap between topic columns in the list layout.
    pub column_gap: T,
    /// Vertical gap between rows in the list layout.
    pub row_gap: T,
    pub palette_size: usize,
}

impl<T: Scalar> Default for LayoutConfig<T> {
    fn default() -> Self {
        Self {
            min_font: T::lit(12.0),
            max_font: T::lit(48.0),
            char_width: T::lit(0.6),
            line_height: T::lit(1.2),
            padding: T::lit(1.0),
            spiral_spacing: T::lit(3.0),
            spiral_step: T::lit(0.1),
            column_gap: T::lit(24.0),
            row_gap: T::lit(4.0),
            palette_size: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PlacedWord<T> {
    pub term: String,
    #[serde(rename = "box")]
    pub rect: Rect<T>,
    pub font_size: T,
    pub weight: T,
    pub topic_id: usize,
    pub color_index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CloudLayout<T> {
    pub canvas: Canvas<T>,
    pub words: Vec<PlacedWord<T>>,
    /// Terms that found no free position, in placement order.
    pub dropped: Vec<String>,
}

/// Linear weight-to-font mapping shared by both layouts.
#[derive(Clone, Copy, Debug)]
pub struct FontScale<T> {
    min_weight: T,
    max_weight: T,
    min_font: T,
    max_font: T,
    single: bool,
}

impl<T: Scalar> FontScale<T> {
    pub fn new(spec: &WordCloudSpec<T>, config: &LayoutConfig<T>) -> Self {
        let mut min_weight = T::infinity();
        let mut max_weight = T::neg_infinity();
        for e in &spec.entries {
            min_weight = min_weight.min(e.weight);
            max_weight = max_weight.max(e.weight);
        }
        Self { min_weight, max_weight, min_font: config.min_font, max_font: config.max_font, single: spec.entries.len() == 1 }
    }

    /// A lone word gets the maximum size; equal weights otherwise map to the
    /// middle of the font range.
    pub fn size(&self, weight: T) -> T {
        if self.single {
            return self.max_font;
        }
        let span = self.max_font - self.min_font;
        if !(self.max_weight > self.min_weight) {
            return self.min_font + span / T::lit(2.0);
        }
        let t = ((weight - self.min_weight) / (self.max_weight - self.min_weight)).max(T::zero()).min(T::one());
        self.min_font + span * t
    }
}

fn glyph_box<T: Scalar>(term: &str, font: T, config: &LayoutConfig<T>) -> (T, T) {
    let chars = T::from_count(term.chars().count().max(1));
    ((config.char_width * font * chars).ceil(), (config.line_height * font).ceil())
}

/// Placement order: heaviest first, then by term, then by input position.
fn placement_order<T: Scalar>(spec: &WordCloudSpec<T>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..spec.entries.len()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (&spec.entries[a], &spec.entries[b]);
        cmp_desc(ea.weight, eb.weight).then_with(|| ea.term.cmp(&eb.term)).then(a.cmp(&b))
    });
    order
}

/// Greedy spiral layout.
///
/// Words are placed heaviest first. Each starts at the canvas center and
/// walks outward along an Archimedean spiral (with a seeded start angle)
/// until its padded box is inside the canvas and clear of every placed box.
/// Words that reach the canvas edge without a free spot are dropped.
pub fn layout_wordle<T: Scalar>(
    spec: &WordCloudSpec<T>,
    canvas: Canvas<T>,
    seed: u64,
    config: &LayoutConfig<T>,
) -> Result<CloudLayout<T>, ViewError> {
    if !(canvas.width > T::zero() && canvas.height > T::zero()) {
        return Err(ViewError::InvalidCanvas);
    }
    if spec.entries.is_empty() {
        return Err(ViewError::EmptySpec);
    }
    let scale = FontScale::new(spec, config);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = T::lit(2.0);
    let (cx, cy) = (canvas.width / two, canvas.height / two);
    let max_radius = (canvas.width * canvas.width + canvas.height * canvas.height).sqrt() / two;
    let radial = config.spiral_spacing / T::lit(std::f64::consts::TAU);
    let step = config.spiral_step.max(T::lit(1e-3));

    let mut placed: Vec<PlacedWord<T>> = Vec::with_capacity(spec.entries.len());
    let mut dropped = Vec::new();
    let mut last_hit: Option<usize> = None;

    for (rank, idx) in placement_order(spec).into_iter().enumerate() {
        let entry = &spec.entries[idx];
        let font = scale.size(entry.weight);
        let (w, h) = glyph_box(&entry.term, font, config);
        let phase = T::lit(rng.gen::<f64>() * std::f64::consts::TAU);

        let mut found = None;
        if w <= canvas.width && h <= canvas.height {
            let mut t = T::zero();
            loop {
                let r = radial * t;
                if r > max_radius {
                    break;
                }
                let angle = phase + t;
                let rect = Rect {
                    x: (cx + r * angle.cos() - w / two).round(),
                    y: (cy + r * angle.sin() - h / two).round(),
                    w,
                    h,
                };
                if rect.inside(canvas.width, canvas.height) {
                    let padded = rect.inflate(config.padding);
                    let cached = last_hit.filter(|&i| placed[i].rect.intersects(&padded));
                    let collision = cached.or_else(|| placed.iter().position(|p| p.rect.intersects(&padded)));
                    match collision {
                        None => {
                            found = Some(rect);
                            break;
                        }
                        Some(i) => last_hit = Some(i),
                    }
                }
                t = t + step;
            }
        }

        match found {
            Some(rect) => placed.push(PlacedWord {
                term: entry.term.clone(),
                rect,
                font_size: font,
                weight: entry.weight,
                topic_id: entry.topic_id,
                color_index: entry.topic_id % config.palette_size.max(1),
            }),
            None if rank == 0 => return Err(ViewError::CanvasTooSmall { term: entry.term.clone() }),
            None => dropped.push(entry.term.clone()),
        }
    }

    Ok(CloudLayout { canvas, words: placed, dropped })
}

/// Column-per-topic list layout. Topics left to right in id order, terms
/// top to bottom by descending weight. The canvas is the bounding extent.
pub fn layout_list<T: Scalar>(spec: &WordCloudSpec<T>, config: &LayoutConfig<T>) -> Result<CloudLayout<T>, ViewError> {
    if spec.entries.is_empty() {
        return Err(ViewError::EmptySpec);
    }
    let scale = FontScale::new(spec, config);
    let mut topics: Vec<usize> = spec.entries.iter().map(|e| e.topic_id).collect();
    topics.sort_unstable();
    topics.dedup();

    let mut words = Vec::with_capacity(spec.entries.len());
    let mut x = T::zero();
    let mut height = T::zero();
    for (column, topic) in topics.into_iter().enumerate() {
        if column > 0 {
            x = x + config.column_gap;
        }
        let mut y = T::zero();
        let mut column_width = T::zero();
        for (row, entry) in spec.topic_entries(topic).into_iter().enumerate() {
            if row > 0 {
                y = y + config.row_gap;
            }
            let font = scale.size(entry.weight);
            let (w, h) = glyph_box(&entry.term, font, config);
            words.push(PlacedWord {
                term: entry.term.clone(),
                rect: Rect { x, y, w, h },
                font_size: font,
                weight: entry.weight,
                topic_id: entry.topic_id,
                color_index: entry.topic_id % config.palette_size.max(1),
            });
            y = y + h;
            column_width = column_width.max(w);
        }
        x = x + column_width;
        height = height.max(y);
    }

    Ok(CloudLayout { canvas: Canvas { width: x, height }, words, dropped: Vec::new() })
}
