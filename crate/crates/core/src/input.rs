//! Tracking frames in, smoothed palm pose and debounced palm/pinch state out.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::geometry::{Pose, Ray, Vec3};

/// Samples this close to the window edge still count as inside it, so a
/// 100 ms window at 90 Hz holds ten samples despite float timestamps.
const WINDOW_EDGE_EPS: f64 = 1e-9;

/// Simplified hand: palm pose (+Z is the palm normal), extension of the
/// four fingers from index to pinky, and the thumb–index gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HandSample {
    pub palm: Pose,
    pub finger_extension: [f64; 4],
    pub pinch_gap: f64,
}

impl HandSample {
    pub fn is_well_formed(&self) -> bool {
        self.finger_extension.iter().all(|e| (0.0..=1.0).contains(e))
            && self.pinch_gap >= 0.0
            && self.pinch_gap.is_finite()
            && self.palm.position.is_finite()
    }
}

/// One input sample: head pose, gaze ray, hand. Invalid gaze or hand keep
/// their last known values with the flag cleared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingFrame {
    pub t: f64,
    pub head: Pose,
    pub gaze: Ray,
    pub gaze_valid: bool,
    pub hand: HandSample,
    pub hand_valid: bool,
}

impl TrackingFrame {
    pub fn valid_hand(&self) -> Option<&HandSample> {
        self.hand_valid.then_some(&self.hand)
    }

    pub fn valid_gaze(&self) -> Option<&Ray> {
        self.gaze_valid.then_some(&self.gaze)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PalmState {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PinchPhase {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GestureKind {
    Click,
    Drag,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PalmThresholds {
    pub open: f64,
    pub closed: f64,
}

impl Default for PalmThresholds {
    fn default() -> Self {
        Self::from(&Config::default())
    }
}

impl From<&Config> for PalmThresholds {
    fn from(c: &Config) -> Self {
        Self { open: c.palm_open_threshold, closed: c.palm_closed_threshold }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinchThresholds {
    pub down_gap: f64,
    pub up_gap: f64,
}

impl Default for PinchThresholds {
    fn default() -> Self {
        Self::from(&Config::default())
    }
}

impl From<&Config> for PinchThresholds {
    fn from(c: &Config) -> Self {
        Self { down_gap: c.pinch_down_gap, up_gap: c.pinch_up_gap }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DragBounds {
    pub displacement: f64,
    pub duration: f64,
}

impl Default for DragBounds {
    fn default() -> Self {
        Self::from(&Config::default())
    }
}

impl From<&Config> for DragBounds {
    fn from(c: &Config) -> Self {
        Self { displacement: c.drag_min_displacement, duration: c.drag_min_duration }
    }
}

/// Mean of every sample no older than `window` before the newest one.
pub fn smooth_position(history: &[(f64, Vec3)], window: f64) -> Option<Vec3> {
    let &(latest, _) = history.last()?;
    let cutoff = latest - window - WINDOW_EDGE_EPS;
    let (sum, n) = history
        .iter()
        .filter(|(t, _)| *t >= cutoff)
        .fold((Vec3::ZERO, 0usize), |(s, n), (_, p)| (s + *p, n + 1));
    Some(sum * (1.0 / n as f64))
}

/// Hysteresis on the four finger extensions; the thumb is not consulted.
pub fn classify_palm(sample: &HandSample, previous: PalmState, th: PalmThresholds) -> PalmState {
    let ext = sample.finger_extension;
    let min = ext.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ext.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min >= th.open {
        PalmState::Open
    } else if max <= th.closed {
        PalmState::Closed
    } else {
        previous
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PinchUpdate {
    pub phase: PinchPhase,
    /// Set when a held pinch was released by tracking loss, not the user.
    pub cancelled: bool,
}

/// Hysteresis on the thumb–index gap. `None` (invalid hand) forces a
/// held pinch up and flags it as cancelled.
pub fn detect_pinch(sample: Option<&HandSample>, previous: PinchPhase, th: PinchThresholds) -> PinchUpdate {
    let Some(sample) = sample else {
        return PinchUpdate { phase: PinchPhase::Up, cancelled: previous == PinchPhase::Down };
    };
    let phase = if sample.pinch_gap < th.down_gap {
        PinchPhase::Down
    } else if sample.pinch_gap > th.up_gap {
        PinchPhase::Up
    } else {
        previous
    };
    PinchUpdate { phase, cancelled: false }
}

/// Drag once either bound is reached, click otherwise.
pub fn classify_pinch_gesture(duration: f64, palm_displacement: f64, bounds: DragBounds) -> GestureKind {
    if palm_displacement >= bounds.displacement || duration >= bounds.duration {
        GestureKind::Drag
    } else {
        GestureKind::Click
    }
}

/// Sliding-window position smoother holding only the samples it needs.
#[derive(Debug, Clone)]
pub struct PositionSmoother {
    window: f64,
    samples: VecDeque<(f64, Vec3)>,
}

impl PositionSmoother {
    pub fn new(window: f64) -> Self {
        Self { window, samples: VecDeque::new() }
    }

    pub fn push(&mut self, t: f64, p: Vec3) {
        self.samples.push_back((t, p));
        let cutoff = t - self.window - WINDOW_EDGE_EPS;
        while self.samples.front().is_some_and(|(st, _)| *st < cutoff) {
            self.samples.pop_front();
        }
    }

    pub fn value(&self) -> Option<Vec3> {
        if self.samples.is_empty() {
            return None;
        }
        let sum = self.samples.iter().fold(Vec3::ZERO, |s, (_, p)| s + *p);
        Some(sum * (1.0 / self.samples.len() as f64))
    }

    pub fn clear(&mut self) {
        self.samples.clear();
    }
}

/// What the interaction state machine sees of one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    pub t: f64,
    pub palm: PalmState,
    pub pinch: PinchPhase,
    pub pinch_cancelled: bool,
    /// Hand invalid for longer than the tracking-loss timeout.
    pub tracking_lost: bool,
    /// Smoothed palm position with the latest valid palm orientation.
    pub palm_pose: Option<Pose>,
}

/// Per-session accumulator. Not shared between threads.
#[derive(Debug, Clone)]
pub struct InputPipeline {
    palm_th: PalmThresholds,
    pinch_th: PinchThresholds,
    loss_timeout: f64,
    smoother: PositionSmoother,
    palm: PalmState,
    pinch: PinchPhase,
    last_orientation: Option<crate::geometry::Orientation>,
    last_valid_hand: Option<f64>,
}

impl InputPipeline {
    pub fn new(cfg: &Config) -> Self {
        Self {
            palm_th: cfg.into(),
            pinch_th: cfg.into(),
            loss_timeout: cfg.tracking_loss_timeout,
            smoother: PositionSmoother::new(cfg.smoothing_window),
            palm: PalmState::Closed,
            pinch: PinchPhase::Up,
            last_orientation: None,
            last_valid_hand: None,
        }
    }

    pub fn process(&mut self, frame: &TrackingFrame) -> InputState {
        let hand = frame.valid_hand();
        if let Some(h) = hand {
            self.smoother.push(frame.t, h.palm.position);
            self.palm = classify_palm(h, self.palm, self.palm_th);
            self.last_orientation = Some(h.palm.orientation);
            self.last_valid_hand = Some(frame.t);
        }
        let pinch = detect_pinch(hand, self.pinch, self.pinch_th);
        self.pinch = pinch.phase;
        let tracking_lost = hand.is_none()
            && self.last_valid_hand.is_none_or(|last| frame.t - last > self.loss_timeout);
        let palm_pose = match (self.smoother.value(), self.last_orientation) {
            (Some(p), Some(q)) => Some(Pose::new(p, q)),
            _ => None,
        };
        InputState {
            t: frame.t,
            palm: self.palm,
            pinch: self.pinch,
            pinch_cancelled: pinch.cancelled,
            tracking_lost,
            palm_pose,
        }
    }
}
