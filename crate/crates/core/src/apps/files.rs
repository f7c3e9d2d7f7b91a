//! File browsers: Downloads is a horizontally scrolling strip, Favorites a
//! fixed grid. Both open a detail view on selection.

use serde::{Deserialize, Serialize};

use super::layout::{grid_cell, split_v, MAIN};
use super::{AppContext, AppEvent};
use crate::geometry::{PanelExtent, Vec3};
use crate::navigation::{scroll_update, ScrollState};
use crate::targeting::{Element, ElementKind, UvRect};

const DOWNLOAD_COLUMN: f64 = 0.075;
const DOWNLOAD_ROWS: usize = 3;
const EXTENSIONS: [&str; 5] = ["pdf", "png", "zip", "txt", "mp4"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FileLayout {
    /// Columns of `rows` files, each `column` meters wide, scrolled along x.
    Strip { rows: usize, column: f64 },
    Grid { cols: usize, rows: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileBrowserState {
    pub app: String,
    pub files: Vec<String>,
    pub detail: Option<usize>,
    pub scroll: ScrollState,
    pub layout: FileLayout,
}

impl FileBrowserState {
    pub fn downloads() -> Self {
        let files = (0..30).map(|i| format!("download_{:02}.{}", i + 1, EXTENSIONS[i % EXTENSIONS.len()])).collect();
        let mut s = Self {
            app: "downloads".into(),
            files,
            detail: None,
            scroll: ScrollState::new([0.0; 2], [0.0; 2]),
            layout: FileLayout::Strip { rows: DOWNLOAD_ROWS, column: DOWNLOAD_COLUMN },
        };
        s.refresh_bounds(&PanelExtent::new(0.30, 0.22).expect("extent"));
        s
    }

    pub fn favorites() -> Self {
        let names = [
            "thesis_draft.pdf",
            "budget_2026.xlsx",
            "holiday.jpg",
            "recipes.md",
            "contract.pdf",
            "roadmap.png",
            "playlist.m3u",
            "notes.txt",
        ];
        Self {
            app: "favorites".into(),
            files: names.iter().map(|s| s.to_string()).collect(),
            detail: None,
            scroll: ScrollState::new([0.0; 2], [0.0; 2]),
            layout: FileLayout::Grid { cols: 4, rows: 2 },
        }
    }

    /// Element id of file `index` (ids count from 1).
    pub fn file_id(&self, index: usize) -> String {
        format!("{}.file.{}", self.app, index + 1)
    }

    pub fn back_id(&self) -> String {
        format!("{}.back", self.app)
    }

    fn detail_id(&self) -> String {
        format!("{}.detail", self.app)
    }

    fn parse_file(&self, id: &str) -> Option<usize> {
        let rest = id.strip_prefix(self.app.as_str())?.strip_prefix(".file.")?;
        let i = rest.parse::<usize>().ok()?.checked_sub(1)?;
        (i < self.files.len()).then_some(i)
    }

    pub fn refresh_bounds(&mut self, extent: &PanelExtent) {
        if let FileLayout::Strip { rows, column } = self.layout {
            let cols = self.files.len().div_ceil(rows);
            let viewport = (MAIN.max_u - MAIN.min_u) * extent.width;
            let overflow = (cols as f64 * column - viewport).max(0.0);
            self.scroll.min = [0.0, 0.0];
            self.scroll.max = [overflow, 0.0];
            self.scroll = self.scroll.clamped();
        }
    }

    pub fn elements(&self, extent: &PanelExtent) -> Vec<Element> {
        if let Some(i) = self.detail {
            let (body, bar) = split_v(MAIN, 0.72);
            return vec![
                Element::new(self.back_id(), grid_cell(bar, 3, 1, 0, 0, 0.01), ElementKind::Button, "Back"),
                Element::new(self.detail_id(), body, ElementKind::Region, self.files[i].as_str()).exempt(),
            ];
        }
        let mut out = Vec::new();
        match self.layout {
            FileLayout::Strip { rows, column } => {
                let cw = column / extent.width;
                for (i, name) in self.files.iter().enumerate() {
                    let (col, row) = (i / rows, i % rows);
                    let u0 = MAIN.min_u + (col as f64 * column - self.scroll.offset[0]) / extent.width;
                    let strip = UvRect::new(u0, MAIN.min_v, u0 + cw, MAIN.max_v);
                    if let Some(rect) = grid_cell(strip, 1, rows, 0, row, 0.006).intersect(&MAIN) {
                        out.push(Element::new(self.file_id(i), rect, ElementKind::GridItem, name.as_str()));
                    }
                }
            }
            FileLayout::Grid { cols, rows } => {
                for (i, name) in self.files.iter().enumerate().take(cols * rows) {
                    let rect = grid_cell(MAIN, cols, rows, i % cols, i / cols, 0.01);
                    out.push(Element::new(self.file_id(i), rect, ElementKind::GridItem, name.as_str()));
                }
            }
        }
        out
    }

    pub fn select(&mut self, id: &str) -> Option<Vec<AppEvent>> {
        if id == self.back_id() {
            return Some(match self.detail.take() {
                Some(_) => vec![AppEvent::DetailClosed { app: self.app.clone() }],
                None => Vec::new(),
            });
        }
        if id == self.detail_id() {
            return Some(Vec::new());
        }
        let i = self.parse_file(id)?;
        if self.detail.is_some() {
            // Grid items are hidden behind the detail view.
            return Some(Vec::new());
        }
        self.detail = Some(i);
        Some(vec![AppEvent::DetailOpened { app: self.app.clone(), item: id.to_string() }])
    }

    pub fn drag_update(&mut self, delta: Vec3, ctx: &AppContext) {
        if self.detail.is_none() && matches!(self.layout, FileLayout::Strip { .. }) {
            self.scroll = scroll_update(ctx.mode, &self.scroll, [delta.x, 0.0], ctx.pan_gain);
        }
    }
}
