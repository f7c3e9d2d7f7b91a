//! Where the menu panel sits each frame: on the palm, floating above the
//! hand, or locked in front of the head.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::geometry::{billboard_toward, horizontal_away_direction, PanelExtent, Pose, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReferenceFrame {
    OnHand,
    AboveHand,
    HeadReferenced,
}

impl ReferenceFrame {
    pub const ALL: [ReferenceFrame; 3] = [Self::OnHand, Self::AboveHand, Self::HeadReferenced];

    pub fn is_hand_attached(self) -> bool {
        matches!(self, Self::OnHand | Self::AboveHand)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::OnHand => "OnHand",
            Self::AboveHand => "AboveHand",
            Self::HeadReferenced => "HeadReferenced",
        }
    }
}

/// Cycles OnHand → AboveHand → HeadReferenced → OnHand.
pub fn toggle_reference_frame(current: ReferenceFrame) -> ReferenceFrame {
    match current {
        ReferenceFrame::OnHand => ReferenceFrame::AboveHand,
        ReferenceFrame::AboveHand => ReferenceFrame::HeadReferenced,
        ReferenceFrame::HeadReferenced => ReferenceFrame::OnHand,
    }
}

/// Offsets used to place the panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementOffsets {
    pub on_hand: f64,
    pub above_rise: f64,
    pub above_away: f64,
    pub head_distance: f64,
}

impl Default for PlacementOffsets {
    fn default() -> Self {
        Self::from(&Config::default())
    }
}

impl From<&Config> for PlacementOffsets {
    fn from(c: &Config) -> Self {
        Self {
            on_hand: c.on_hand_offset,
            above_rise: c.above_hand_rise,
            above_away: c.above_hand_away,
            head_distance: c.head_distance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UiPlacement {
    pub pose: Pose,
    pub extent: PanelExtent,
}

/// Resolves the panel pose for `frame`.
///
/// `palm` is the smoothed palm pose; `head` is used unsmoothed. Billboarded
/// placements take the head orientation if the panel coincides with the head.
pub fn resolve_ui_pose(frame: ReferenceFrame, palm: &Pose, head: &Pose, offsets: &PlacementOffsets) -> Pose {
    match frame {
        ReferenceFrame::OnHand => Pose::new(
            palm.position + palm.orientation.normal() * offsets.on_hand,
            palm.orientation,
        ),
        ReferenceFrame::AboveHand => {
            let away = horizontal_away_direction(head.position, palm.position, head.orientation.forward());
            let position = palm.position + Vec3::Y * offsets.above_rise + away * offsets.above_away;
            facing_head(position, head)
        }
        ReferenceFrame::HeadReferenced => {
            let position = head.position + head.orientation.forward() * offsets.head_distance;
            facing_head(position, head)
        }
    }
}

fn facing_head(position: Vec3, head: &Pose) -> Pose {
    let orientation = billboard_toward(position, head.position, Vec3::Y).unwrap_or(head.orientation);
    Pose::new(position, orientation)
}
