//! Standalone SVG rendering for exported views.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::layout::CloudLayout;
use super::tilebar::TileBarGrid;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Palette {
    /// Qualitative topic colors, indexed by color index.
    pub topics: Vec<String>,
    /// Fill for TileBar cells where the term does not occur.
    pub empty_cell: String,
    /// Sequential TileBar scale from lowest to highest frequency.
    pub scale_low: String,
    pub scale_high: String,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            topics: ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e"].map(String::from).to_vec(),
            empty_cell: "#d9d9d9".into(),
            scale_low: "#c6dbef".into(),
            scale_high: "#08306b".into(),
        }
    }
}

fn parse_hex(hex: &str) -> (u8, u8, u8) {
    let h = hex.trim_start_matches('#');
    let channel = |i: usize| h.get(i..i + 2).and_then(|c| u8::from_str_radix(c, 16).ok()).unwrap_or(0);
    (channel(0), channel(2), channel(4))
}

/// Linear blend between two hex colors, `t` in `[0, 1]`.
pub fn blend(low: &str, high: &str, t: f64) -> String {
    let (a, b) = (parse_hex(low), parse_hex(high));
    let mix = |x: u8, y: u8| (x as f64 + (y as f64 - x as f64) * t.clamp(0.0, 1.0)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

pub(crate) fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn cloud_svg<T: Scalar>(layout: &CloudLayout<T>, palette: &Palette) -> String {
    let (w, h) = (layout.canvas.width.to_f64_lossy(), layout.canvas.height.to_f64_lossy());
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    for word in &layout.words {
        let color = palette.topics.get(word.color_index).map(String::as_str).unwrap_or("#333333");
        let r = &word.rect;
        // baseline sits at 5/6 of the box so descenders stay inside
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="{}" fill="{color}">{}</text>"#,
            r.x.to_f64_lossy(),
            (r.y + r.h * T::lit(5.0 / 6.0)).to_f64_lossy(),
            word.font_size.to_f64_lossy(),
            escape(&word.term)
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn tilebar_svg(grid: &TileBarGrid, palette: &Palette, cell: u32) -> String {
    let cols = grid.rows.iter().map(Vec::len).max().unwrap_or(0) as u32;
    let (w, h) = (cols * cell, grid.rows.len() as u32 * cell);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, "  <title>{}</title>", escape(&grid.term));
    for (r, row) in grid.rows.iter().enumerate() {
        for (c, &count) in row.iter().enumerate() {
            let fill = match grid.intensity(count) {
                Some(t) => blend(&palette.scale_low, &palette.scale_high, t),
                None => palette.empty_cell.clone(),
            };
            let _ = writeln!(
                out,
                r##"  <rect x="{}" y="{}" width="{cell}" height="{cell}" fill="{fill}" stroke="#ffffff"><title>chapter {} chunk {}: {count}</title></rect>"##,
                c as u32 * cell,
                r as u32 * cell,
                r + 1,
                c + 1
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
