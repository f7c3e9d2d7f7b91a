//! Gallery with three depth layers: albums, the images of one album, and a
//! single image. Pushing the pinched hand forward descends into whatever the
//! gaze rests on; pulling back ascends.

use serde::{Deserialize, Serialize};

use super::layout::{grid_cell, split_v, MAIN};
use super::{AppContext, AppEvent};
use crate::geometry::Vec3;
use crate::navigation::{depth_target, DepthNavState};
use crate::targeting::{Element, ElementKind};

pub const ALBUMS: usize = 3;
pub const IMAGES_PER_ALBUM: usize = 9;
pub const BACK: &str = "gallery.back";
const VIEW: &str = "gallery.view";
const ALBUM_PREFIX: &str = "gallery.album.";
const IMAGE_PREFIX: &str = "gallery.image.";
const ALBUM_NAMES: [&str; ALBUMS] = ["Coast", "City", "Forest"];

/// Album element id (ids count from 1).
pub fn album_id(album: usize) -> String {
    format!("{ALBUM_PREFIX}{}", album + 1)
}

/// Image element id; images are numbered across albums from 1.
pub fn image_id(album: usize, image: usize) -> String {
    format!("{IMAGE_PREFIX}{}", album * IMAGES_PER_ALBUM + image + 1)
}

fn parse_index(id: &str, prefix: &str, count: usize) -> Option<usize> {
    let i = id.strip_prefix(prefix)?.parse::<usize>().ok()?.checked_sub(1)?;
    (i < count).then_some(i)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GalleryState {
    pub depth: DepthNavState,
    pub album: Option<usize>,
    /// Index within the open album.
    pub image: Option<usize>,
    /// Forward hand travel since the drag began.
    drag_forward: f64,
}

impl Default for GalleryState {
    fn default() -> Self {
        Self { depth: DepthNavState::new(3), album: None, image: None, drag_forward: 0.0 }
    }
}

impl GalleryState {
    pub fn layer(&self) -> usize {
        self.depth.layer
    }

    pub fn elements(&self) -> Vec<Element> {
        match (self.album, self.image) {
            (None, _) => (0..ALBUMS)
                .map(|k| {
                    let rect = grid_cell(MAIN, ALBUMS, 1, k, 0, 0.015);
                    Element::new(album_id(k), rect, ElementKind::GridItem, ALBUM_NAMES[k])
                })
                .collect(),
            (Some(a), None) => {
                let (body, bar) = split_v(MAIN, 0.72);
                let mut out = vec![Element::new(BACK, grid_cell(bar, 3, 1, 0, 0, 0.01), ElementKind::Button, "Back")];
                for i in 0..IMAGES_PER_ALBUM {
                    let rect = grid_cell(body, 3, 3, i % 3, i / 3, 0.008);
                    let label = format!("{} {}", ALBUM_NAMES[a], i + 1);
                    out.push(Element::new(image_id(a, i), rect, ElementKind::GridItem, label));
                }
                out
            }
            (Some(a), Some(i)) => {
                let (body, bar) = split_v(MAIN, 0.72);
                vec![
                    Element::new(BACK, grid_cell(bar, 3, 1, 0, 0, 0.01), ElementKind::Button, "Back"),
                    Element::new(VIEW, body, ElementKind::Region, image_id(a, i)).exempt(),
                ]
            }
        }
    }

    fn event(&self) -> AppEvent {
        AppEvent::GalleryLayerChanged {
            layer: self.depth.layer,
            album: self.album.map(album_id),
            image: self.album.zip(self.image).map(|(a, i)| image_id(a, i)),
        }
    }

    /// Descends one layer into `id` if it names an item on the current
    /// layer.
    fn descend_into(&mut self, id: &str) -> bool {
        match (self.album, self.image) {
            (None, _) => match parse_index(id, ALBUM_PREFIX, ALBUMS) {
                Some(k) => {
                    self.album = Some(k);
                    self.depth.layer = 1;
                    true
                }
                None => false,
            },
            (Some(a), None) => match parse_index(id, IMAGE_PREFIX, ALBUMS * IMAGES_PER_ALBUM) {
                Some(g) if g / IMAGES_PER_ALBUM == a => {
                    self.image = Some(g % IMAGES_PER_ALBUM);
                    self.depth.layer = 2;
                    true
                }
                _ => false,
            },
            (Some(_), Some(_)) => false,
        }
    }

    fn ascend(&mut self) {
        if self.image.take().is_none() {
            self.album = None;
        }
        self.depth.layer = self.depth.layer.saturating_sub(1);
    }

    pub fn select(&mut self, id: &str) -> Option<Vec<AppEvent>> {
        if id == BACK {
            if self.depth.layer == 0 {
                return Some(Vec::new());
            }
            self.ascend();
            return Some(vec![self.event()]);
        }
        if id == VIEW {
            return Some(Vec::new());
        }
        if parse_index(id, ALBUM_PREFIX, ALBUMS).is_none()
            && parse_index(id, IMAGE_PREFIX, ALBUMS * IMAGES_PER_ALBUM).is_none()
        {
            return None;
        }
        Some(if self.descend_into(id) { vec![self.event()] } else { Vec::new() })
    }

    pub fn drag_start(&mut self) {
        self.depth.begin_drag();
        self.drag_forward = 0.0;
    }

    /// Follows the forward displacement one layer at a time. A forward
    /// crossing with nothing under the gaze is absorbed into the start
    /// layer so the hand does not have to travel back before it counts.
    pub fn drag_update(&mut self, delta: Vec3, ctx: &AppContext) -> Vec<AppEvent> {
        self.drag_forward += delta.z;
        let mut out = Vec::new();
        loop {
            let target = depth_target(self.depth.start_layer, self.drag_forward, ctx.layer_spacing, self.depth.layer_count);
            if target > self.depth.layer {
                let hovered = ctx.gaze.hover.as_deref().is_some_and(|h| self.descend_into(h));
                if hovered {
                    out.push(self.event());
                } else {
                    self.depth.start_layer -= (target - self.depth.layer) as i64;
                    break;
                }
            } else if target < self.depth.layer {
                self.ascend();
                out.push(self.event());
            } else {
                break;
            }
        }
        out
    }
}
