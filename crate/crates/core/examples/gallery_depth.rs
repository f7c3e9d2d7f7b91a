//! Pushing into the gallery one layer per 5 cm, then pulling back out.

use gazepinch::apps::gallery::GalleryState;
use gazepinch::apps::{AppContext, AppEvent, GazeContext};
use gazepinch::geometry::Vec3;

fn main() {
    let mut g = GalleryState::default();
    g.drag_start();
    let hover_for = |g: &GalleryState| match g.layer() {
        0 => "gallery.album.2".to_string(),
        _ => "gallery.image.14".to_string(),
    };
    let mut travel = 0.0;
    for dz in std::iter::repeat_n(0.005, 24).chain(std::iter::repeat_n(-0.005, 24)) {
        travel += dz;
        let ctx = AppContext { gaze: GazeContext { point: None, hover: Some(hover_for(&g)) }, ..AppContext::default() };
        for e in g.drag_update(Vec3::new(0.0, 0.0, dz), &ctx) {
            if let AppEvent::GalleryLayerChanged { layer, album, image } = e {
                println!("{travel:+.3} m: layer {layer} album {album:?} image {image:?}");
            }
        }
    }
}
