//! A pinch drag over the map: pan right, then push forward while looking
//! at a marker, then pull back.

use gazepinch::apps::map::MapState;
use gazepinch::geometry::{PanelPoint, Vec3};
use gazepinch::navigation::{content_to_panel, map_pan_zoom_update, visible_rect, MapParams, MapView, PeepholeMode};

fn show(label: &str, v: &MapView, params: &MapParams) {
    let [x0, y0, x1, y1] = visible_rect(v, params.aspect);
    println!("{label:<14} scale {:.4}  centre ({:.3}, {:.3})  shows [{x0:.3}, {y0:.3}] - [{x1:.3}, {y1:.3}]", v.scale, v.center[0], v.center[1]);
}

fn main() {
    let params = MapParams::default();
    let marker = MapState::default().markers[1].position;
    let mut v = MapView::default();
    show("start", &v, &params);
    for _ in 0..10 {
        let gaze = content_to_panel(&v, marker, params.aspect);
        v = map_pan_zoom_update(&v, Vec3::new(0.0, 0.0, 0.01), Some(gaze), PeepholeMode::Dynamic, &params);
    }
    show("pushed 10 cm", &v, &params);
    let at = content_to_panel(&v, marker, params.aspect);
    println!("marker now at panel ({:.3}, {:.3})", at.u, at.v);
    v = map_pan_zoom_update(&v, Vec3::new(0.02, 0.0, 0.0), None, PeepholeMode::Dynamic, &params);
    show("hand right 2 cm", &v, &params);
    v = map_pan_zoom_update(&v, Vec3::new(0.0, 0.0, -0.05), Some(PanelPoint::new(0.9, 0.9)), PeepholeMode::Dynamic, &params);
    show("pulled 5 cm", &v, &params);
}
