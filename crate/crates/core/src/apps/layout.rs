//! Panel layout: a top bar strip and a main area below it.

use crate::targeting::{Element, ElementKind, UvRect};

pub const HOME_BUTTON: &str = "top.home";
pub const FRAME_BUTTON: &str = "top.frame";

pub const MAIN: UvRect = UvRect { min_u: 0.02, min_v: 0.02, max_u: 0.98, max_v: 0.85 };
const TOP_MIN_V: f64 = 0.87;
const TOP_MAX_V: f64 = 0.99;

pub fn top_bar(frame_label: &str) -> Vec<Element> {
    vec![
        Element::new(HOME_BUTTON, UvRect::new(0.02, TOP_MIN_V, 0.24, TOP_MAX_V), ElementKind::Button, "Home"),
        Element::new(FRAME_BUTTON, UvRect::new(0.76, TOP_MIN_V, 0.98, TOP_MAX_V), ElementKind::Button, frame_label),
    ]
}

/// Cell `(col, row)` of a `cols × rows` grid filling `area`, rows counted
/// from the top, with `gap` (in panel units) trimmed from each side.
pub fn grid_cell(area: UvRect, cols: usize, rows: usize, col: usize, row: usize, gap: f64) -> UvRect {
    let w = (area.max_u - area.min_u) / cols as f64;
    let h = (area.max_v - area.min_v) / rows as f64;
    let min_u = area.min_u + w * col as f64;
    let max_v = area.max_v - h * row as f64;
    UvRect::new(min_u + gap, max_v - h + gap, min_u + w - gap, max_v - gap)
}

/// Splits `area` at `v`, returning (below, above).
pub fn split_v(area: UvRect, v: f64) -> (UvRect, UvRect) {
    (
        UvRect::new(area.min_u, area.min_v, area.max_u, v),
        UvRect::new(area.min_u, v, area.max_u, area.max_v),
    )
}
