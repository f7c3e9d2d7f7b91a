//! Pinch-drag to content motion: 2D peephole scrolling, discrete depth
//! layers and gaze-pivot pan-zoom over a unit-square map.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::geometry::{PanelPoint, Pose, Vec3};
use crate::reference_frame::ReferenceFrame;

/// Static: the panel stays put and content follows the hand.
/// Dynamic: the panel rides the hand over content fixed in space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeepholeMode {
    Static,
    Dynamic,
}

impl PeepholeMode {
    pub fn for_frame(frame: ReferenceFrame) -> Self {
        if frame.is_hand_attached() {
            Self::Dynamic
        } else {
            Self::Static
        }
    }

    fn sign(self) -> f64 {
        match self {
            Self::Static => -1.0,
            Self::Dynamic => 1.0,
        }
    }
}

/// Viewport offset over scrollable content, in content meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScrollState {
    pub offset: [f64; 2],
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl ScrollState {
    pub fn new(min: [f64; 2], max: [f64; 2]) -> Self {
        Self { offset: [0.0f64.clamp(min[0], max[0]), 0.0f64.clamp(min[1], max[1])], min, max }
    }

    pub fn clamped(mut self) -> Self {
        for i in 0..2 {
            self.offset[i] = self.offset[i].clamp(self.min[i], self.max[i]);
        }
        self
    }
}

pub fn scroll_update(mode: PeepholeMode, s: &ScrollState, hand_delta: [f64; 2], gain: f64) -> ScrollState {
    let k = mode.sign() * gain;
    ScrollState {
        offset: [s.offset[0] + k * hand_delta[0], s.offset[1] + k * hand_delta[1]],
        ..*s
    }
    .clamped()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthNavState {
    pub layer: usize,
    pub layer_count: usize,
    /// Layer the current drag is measured from. May go negative when
    /// forward crossings are absorbed.
    pub start_layer: i64,
}

impl DepthNavState {
    pub fn new(layer_count: usize) -> Self {
        Self { layer: 0, layer_count, start_layer: 0 }
    }

    /// Re-anchor at the current layer when a new drag begins.
    pub fn begin_drag(&mut self) {
        self.start_layer = self.layer as i64;
    }
}

/// Layer the hand position maps to: `start + round(displacement / spacing)`
/// clamped to the available layers. Halfway points round forward.
pub fn depth_target(start_layer: i64, displacement: f64, spacing: f64, layer_count: usize) -> usize {
    let steps = (displacement / spacing + 0.5).floor() as i64;
    (start_layer + steps).clamp(0, layer_count.saturating_sub(1) as i64) as usize
}

pub fn depth_layer_update(d: &DepthNavState, forward_displacement: f64, spacing: f64) -> DepthNavState {
    DepthNavState { layer: depth_target(d.start_layer, forward_displacement, spacing, d.layer_count), ..*d }
}

/// Map viewport over the unit-square content. `scale` is content units
/// per panel width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapView {
    pub center: [f64; 2],
    pub scale: f64,
}

impl Default for MapView {
    fn default() -> Self {
        Self { center: [0.5, 0.5], scale: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub panel_width: f64,
    /// Panel height over width.
    pub aspect: f64,
    pub scale_min: f64,
    pub scale_max: f64,
    pub zoom_doubling: f64,
    pub gain: f64,
}

impl Default for MapParams {
    fn default() -> Self {
        Self::from(&Config::default())
    }
}

impl From<&Config> for MapParams {
    fn from(c: &Config) -> Self {
        Self {
            panel_width: c.panel_width,
            aspect: c.panel_height / c.panel_width,
            scale_min: c.map_scale_min,
            scale_max: c.map_scale_max,
            zoom_doubling: c.zoom_doubling_distance,
            gain: c.pan_gain,
        }
    }
}

/// Visible content rectangle `[min_x, min_y, max_x, max_y]`.
pub fn visible_rect(v: &MapView, aspect: f64) -> [f64; 4] {
    let (hw, hh) = (v.scale * 0.5, v.scale * aspect * 0.5);
    [v.center[0] - hw, v.center[1] - hh, v.center[0] + hw, v.center[1] + hh]
}

pub fn panel_to_content(v: &MapView, p: PanelPoint, aspect: f64) -> [f64; 2] {
    [v.center[0] + (p.u - 0.5) * v.scale, v.center[1] + (p.v - 0.5) * v.scale * aspect]
}

pub fn content_to_panel(v: &MapView, c: [f64; 2], aspect: f64) -> PanelPoint {
    PanelPoint::new((c[0] - v.center[0]) / v.scale + 0.5, (c[1] - v.center[1]) / (v.scale * aspect) + 0.5)
}

/// Clamps the scale, then keeps the visible rectangle inside the content
/// (centred on any axis where it is larger than the content).
pub fn clamp_view(v: &MapView, params: &MapParams) -> MapView {
    let scale = v.scale.clamp(params.scale_min, params.scale_max);
    let axis = |c: f64, half: f64| if half >= 0.5 { 0.5 } else { c.clamp(half, 1.0 - half) };
    MapView {
        center: [axis(v.center[0], scale * 0.5), axis(v.center[1], scale * params.aspect * 0.5)],
        scale,
    }
}

/// Sets the scale to `scale * factor` while keeping the content point under
/// `pivot` in place, then clamps.
pub fn zoom_about(v: &MapView, factor: f64, pivot: PanelPoint, params: &MapParams) -> MapView {
    let anchor = panel_to_content(v, pivot, params.aspect);
    let scale = (v.scale * factor).clamp(params.scale_min, params.scale_max);
    let zoomed = MapView {
        center: [
            anchor[0] - (pivot.u - 0.5) * scale,
            anchor[1] - (pivot.v - 0.5) * scale * params.aspect,
        ],
        scale,
    };
    clamp_view(&zoomed, params)
}

/// One frame of map navigation: pan by the lateral drag delta, then zoom by
/// the forward delta. Zoom-in pivots on the gaze point (panel centre when
/// the gaze is off the panel); zoom-out always pivots on the panel centre.
pub fn map_pan_zoom_update(
    v: &MapView,
    hand_delta: Vec3,
    gaze_pivot: Option<PanelPoint>,
    mode: PeepholeMode,
    params: &MapParams,
) -> MapView {
    let per_meter = v.scale / params.panel_width * params.gain * mode.sign();
    let panned = clamp_view(
        &MapView {
            center: [v.center[0] + hand_delta.x * per_meter, v.center[1] + hand_delta.y * per_meter],
            scale: v.scale,
        },
        params,
    );
    if hand_delta.z == 0.0 {
        return panned;
    }
    let factor = 2f64.powf(-hand_delta.z / params.zoom_doubling);
    let pivot = if hand_delta.z > 0.0 { gaze_pivot.unwrap_or(PanelPoint::CENTER) } else { PanelPoint::CENTER };
    zoom_about(&panned, factor, pivot, params)
}

/// Panel-plane travel equivalent to the head's yaw/pitch change, for
/// scrolling by head motion while pinching. x follows a rightward turn,
/// y an upward tilt.
pub fn head_scroll_delta(previous: &Pose, current: &Pose, panel_distance: f64) -> Vec3 {
    let angles = |p: &Pose| {
        let f = p.orientation.forward();
        (f.x.atan2(-f.z), f.y.clamp(-1.0, 1.0).asin())
    };
    let (yaw0, pitch0) = angles(previous);
    let (yaw1, pitch1) = angles(current);
    let mut dyaw = yaw1 - yaw0;
    if dyaw > std::f64::consts::PI {
        dyaw -= std::f64::consts::TAU;
    } else if dyaw < -std::f64::consts::PI {
        dyaw += std::f64::consts::TAU;
    }
    Vec3::new(dyaw * panel_distance, (pitch1 - pitch0) * panel_distance, 0.0)
}
