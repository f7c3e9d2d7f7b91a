//! Engine configuration. Every threshold and distance lives here with its
//! default; config files may override any subset of keys.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::geometry::PanelExtent;
use crate::reference_frame::ReferenceFrame;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// All four finger extensions at or above this open the palm.
    pub palm_open_threshold: f64,
    /// All four finger extensions at or below this close the palm.
    pub palm_closed_threshold: f64,
    /// Thumb–index gap (m) below which a pinch goes down.
    pub pinch_down_gap: f64,
    /// Thumb–index gap (m) above which a pinch comes back up.
    pub pinch_up_gap: f64,
    /// Palm travel (m) that promotes a pinch to a drag.
    pub drag_min_displacement: f64,
    /// Pinch hold time (s) that promotes a pinch to a drag.
    pub drag_min_duration: f64,
    /// Sliding-window length (s) for palm position smoothing.
    pub smoothing_window: f64,
    /// Duration (s) of the summon scale-up.
    pub summon_duration: f64,
    /// Hand invalid for longer than this (s) dismisses the UI.
    pub tracking_loss_timeout: f64,

    pub on_hand_offset: f64,
    pub above_hand_rise: f64,
    pub above_hand_away: f64,
    pub head_distance: f64,
    pub panel_width: f64,
    pub panel_height: f64,

    pub pan_gain: f64,
    /// Distance (m) between gallery layers.
    pub layer_spacing: f64,
    /// Forward travel (m) that doubles map magnification.
    pub zoom_doubling_distance: f64,
    pub map_scale_min: f64,
    pub map_scale_max: f64,
    /// Net horizontal travel (m) for the notification drag shortcuts.
    pub shortcut_threshold: f64,
    pub notification_shortcuts: bool,
    /// Head rotation while pinching also scrolls (Downloads).
    pub head_scroll: bool,

    pub reference_frame: ReferenceFrame,
    pub frame_rate: u32,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            palm_open_threshold: 0.7,
            palm_closed_threshold: 0.3,
            pinch_down_gap: 0.020,
            pinch_up_gap: 0.030,
            drag_min_displacement: 0.015,
            drag_min_duration: 0.300,
            smoothing_window: 0.100,
            summon_duration: 0.250,
            tracking_loss_timeout: 0.250,
            on_hand_offset: 0.045,
            above_hand_rise: 0.30,
            above_hand_away: 0.15,
            head_distance: 0.55,
            panel_width: 0.30,
            panel_height: 0.22,
            pan_gain: 1.0,
            layer_spacing: 0.05,
            zoom_doubling_distance: 0.05,
            map_scale_min: 0.01,
            map_scale_max: 1.0,
            shortcut_threshold: 0.03,
            notification_shortcuts: false,
            head_scroll: false,
            reference_frame: ReferenceFrame::OnHand,
            frame_rate: 90,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Config = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    // Negated comparisons so that NaN fails every check.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: &str| Err(ConfigError::Invalid(msg.to_string()));
        if !(self.palm_closed_threshold < self.palm_open_threshold) {
            return bad("palm_closed_threshold must be below palm_open_threshold");
        }
        if !(self.pinch_down_gap < self.pinch_up_gap) || self.pinch_down_gap <= 0.0 {
            return bad("pinch thresholds must satisfy 0 < down < up");
        }
        if self.panel_extent_checked().is_none() {
            return bad("panel extent must be positive");
        }
        let positive = [
            self.smoothing_window,
            self.summon_duration,
            self.tracking_loss_timeout,
            self.layer_spacing,
            self.zoom_doubling_distance,
            self.map_scale_min,
            self.pan_gain,
        ];
        if positive.iter().any(|v| !(*v > 0.0)) {
            return bad("windows, spacings, gains and scale bounds must be positive");
        }
        if !(self.map_scale_min <= self.map_scale_max) {
            return bad("map_scale_min must not exceed map_scale_max");
        }
        if self.frame_rate == 0 {
            return bad("frame_rate must be positive");
        }
        Ok(())
    }

    fn panel_extent_checked(&self) -> Option<PanelExtent> {
        PanelExtent::new(self.panel_width, self.panel_height)
    }

    pub fn panel_extent(&self) -> PanelExtent {
        self.panel_extent_checked().expect("validated panel extent")
    }

    /// Short stable fingerprint of the canonical JSON form.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let hash = Sha256::digest(canonical.as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
