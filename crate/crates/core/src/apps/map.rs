use serde::{Deserialize, Serialize};

use super::layout::MAIN;
use super::{AppContext, AppEvent};
use crate::geometry::Vec3;
use crate::navigation::{content_to_panel, map_pan_zoom_update, visible_rect, MapParams, MapView};
use crate::targeting::{Element, ElementKind, UvRect};

pub const CANVAS: &str = "map.canvas";
/// Marker circle radius in content units.
pub const MARKER_RADIUS: f64 = 0.015;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub id: String,
    pub position: [f64; 2],
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapState {
    pub view: MapView,
    pub markers: Vec<Marker>,
}

impl Default for MapState {
    fn default() -> Self {
        let markers = [([0.21, 0.34], "417"), ([0.77, 0.62], "583"), ([0.48, 0.69], "926")]
            .into_iter()
            .enumerate()
            .map(|(k, (position, label))| Marker { id: format!("map.marker.{}", k + 1), position, label: label.into() })
            .collect();
        Self { view: MapView::default(), markers }
    }
}

impl MapState {
    /// True when the whole marker circle is inside the visible window.
    pub fn marker_visible(&self, marker: &Marker, aspect: f64) -> bool {
        let [x0, y0, x1, y1] = visible_rect(&self.view, aspect);
        let [x, y] = marker.position;
        x - MARKER_RADIUS >= x0 && x + MARKER_RADIUS <= x1 && y - MARKER_RADIUS >= y0 && y + MARKER_RADIUS <= y1
    }

    /// The canvas and markers are display-only: gaze over the map resolves
    /// to nothing rather than snapping to the top bar.
    pub fn elements(&self, params: &MapParams) -> Vec<Element> {
        let mut out = vec![Element::new(CANVAS, MAIN, ElementKind::Region, "Map").exempt()];
        for m in &self.markers {
            let c = content_to_panel(&self.view, m.position, params.aspect);
            let (ru, rv) = (MARKER_RADIUS / self.view.scale, MARKER_RADIUS / (self.view.scale * params.aspect));
            let rect = UvRect::new(c.u - ru, c.v - rv, c.u + ru, c.v + rv);
            if let Some(r) = rect.intersect(&UvRect::new(0.0, 0.0, 1.0, 1.0)) {
                out.push(Element::new(m.id.as_str(), r, ElementKind::Region, m.label.as_str()).exempt());
            }
        }
        out
    }

    pub fn select(&mut self, id: &str) -> Option<Vec<AppEvent>> {
        (id == CANVAS || self.markers.iter().any(|m| m.id == id)).then(Vec::new)
    }

    pub fn drag_update(&mut self, delta: Vec3, ctx: &AppContext) {
        self.view = map_pan_zoom_update(&self.view, delta, ctx.gaze.point, ctx.mode, &ctx.map);
    }

    pub fn drag_end(&self) -> Vec<AppEvent> {
        vec![AppEvent::MapSettled { center: self.view.center, scale: self.view.scale }]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apps::GazeContext;
    use crate::geometry::PanelPoint;
    use crate::navigation::{panel_to_content, PeepholeMode};

    #[test]
    fn forward_drag_zooms_about_gaze() {
        let pivot = PanelPoint::new(0.75, 0.5);
        let ctx = AppContext {
            mode: PeepholeMode::Static,
            gaze: GazeContext { point: Some(pivot), hover: None },
            ..AppContext::default()
        };
        let mut m = MapState::default();
        let before = panel_to_content(&m.view, pivot, ctx.map.aspect);
        m.drag_update(Vec3::new(0.0, 0.0, 0.05), &ctx);
        assert!((m.view.scale - 0.5).abs() < 1e-12);
        let after = panel_to_content(&m.view, pivot, ctx.map.aspect);
        assert!((before[0] - after[0]).abs() < 1e-9 && (before[1] - after[1]).abs() < 1e-9);
    }

    #[test]
    fn all_markers_visible_at_full_view() {
        let m = MapState::default();
        let aspect = MapParams::default().aspect;
        // Full width shows x in [0,1]; y is cropped to the panel aspect.
        let shown: Vec<_> = m.markers.iter().filter(|k| m.marker_visible(k, aspect)).collect();
        assert_eq!(shown.len(), 3);
        assert!(m.elements(&MapParams::default()).iter().all(|e| e.snap_exempt));
    }

    #[test]
    fn settle_reports_view() {
        let m = MapState::default();
        assert_eq!(m.drag_end(), vec![AppEvent::MapSettled { center: [0.5, 0.5], scale: 1.0 }]);
    }
}
