//! Gaze point to hovered element, snapping to the closest interactive target.

use serde::{Deserialize, Serialize};

use crate::fsm::UiEventKind;
use crate::geometry::PanelPoint;

pub type ElementId = String;

/// Axis-aligned rectangle in panel `(u, v)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UvRect {
    pub min_u: f64,
    pub min_v: f64,
    pub max_u: f64,
    pub max_v: f64,
}

impl UvRect {
    pub fn new(min_u: f64, min_v: f64, max_u: f64, max_v: f64) -> Self {
        Self { min_u, min_v, max_u, max_v }
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.max_u > self.min_u && self.max_v > self.min_v)
    }

    pub fn contains(&self, p: PanelPoint) -> bool {
        (self.min_u..=self.max_u).contains(&p.u) && (self.min_v..=self.max_v).contains(&p.v)
    }

    /// Euclidean distance from `p` to the rectangle; zero inside.
    pub fn distance(&self, p: PanelPoint) -> f64 {
        let du = (self.min_u - p.u).max(0.0).max(p.u - self.max_u);
        let dv = (self.min_v - p.v).max(0.0).max(p.v - self.max_v);
        du.hypot(dv)
    }

    pub fn center(&self) -> PanelPoint {
        PanelPoint::new((self.min_u + self.max_u) * 0.5, (self.min_v + self.max_v) * 0.5)
    }

    pub fn intersect(&self, o: &UvRect) -> Option<UvRect> {
        let r = UvRect::new(
            self.min_u.max(o.min_u),
            self.min_v.max(o.min_v),
            self.max_u.min(o.max_u),
            self.max_v.min(o.max_v),
        );
        (!r.is_degenerate()).then_some(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementKind {
    Button,
    ListItem,
    GridItem,
    Region,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub id: ElementId,
    pub rect: UvRect,
    pub kind: ElementKind,
    /// Never a hover or snap target (e.g. a full-panel image).
    pub snap_exempt: bool,
    pub label: String,
}

impl Element {
    pub fn new(id: impl Into<String>, rect: UvRect, kind: ElementKind, label: impl Into<String>) -> Self {
        Self { id: id.into(), rect, kind, snap_exempt: false, label: label.into() }
    }

    pub fn exempt(mut self) -> Self {
        self.snap_exempt = true;
        self
    }
}

/// Element under the gaze point, snapping to the nearest interactive one.
///
/// A point inside an interactive element picks it (first in sequence order
/// on overlap). A point that only lies on snap-exempt content picks nothing.
/// Anywhere else the interactive element with the smallest point-to-rect
/// distance wins, ties going to the earlier element.
pub fn resolve_hover(point: Option<PanelPoint>, elements: &[Element]) -> Option<ElementId> {
    let p = point?;
    let mut best: Option<(&Element, f64)> = None;
    let mut on_exempt = false;
    for e in elements {
        if e.snap_exempt {
            on_exempt |= e.rect.contains(p);
            continue;
        }
        let d = e.rect.distance(p);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((e, d));
        }
    }
    match best {
        Some((e, 0.0)) => Some(e.id.clone()),
        Some(_) if on_exempt => None,
        Some((e, _)) => Some(e.id.clone()),
        None => None,
    }
}

/// `HoverChanged` iff the hovered element changed.
pub fn hover_transition(old: Option<&str>, new: Option<&str>) -> Option<UiEventKind> {
    (old != new).then(|| UiEventKind::HoverChanged {
        from: old.map(str::to_owned),
        to: new.map(str::to_owned),
    })
}
