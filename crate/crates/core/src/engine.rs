//! One session's full per-frame pipeline: input conditioning, panel
//! placement, gaze hit-testing, the interaction state machine and the apps.

use serde::Serialize;
use thiserror::Error;

use crate::apps::{AppContext, AppEvent, AppViewModel, GazeContext, SessionState};
use crate::config::Config;
use crate::fsm::{step, FsmConfig, Interaction, UiEventKind};
use crate::geometry::{ray_panel_intersection, PanelPoint, Pose, Vec3};
use crate::input::{InputPipeline, TrackingFrame};
use crate::navigation::head_scroll_delta;
use crate::reference_frame::{resolve_ui_pose, PlacementOffsets, ReferenceFrame};
use crate::targeting::resolve_hover;

#[derive(Debug, Clone, PartialEq)]
pub enum LogEvent {
    Ui(UiEventKind),
    App(AppEvent),
}

impl LogEvent {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ui(k) => k.name(),
            Self::App(a) => a.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogEntry {
    pub t: f64,
    pub event: LogEvent,
}

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("frame time {t} does not advance past {previous}")]
    NonMonotonic { t: f64, previous: f64 },
    #[error("frame time {0} is not finite")]
    NonFiniteTime(f64),
}

/// Serializable view of a session after a frame, for live clients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub t: Option<f64>,
    pub fsm: &'static str,
    pub ui_pose: Option<Pose>,
    pub reference_frame: ReferenceFrame,
    pub view_model: AppViewModel,
    pub hover: Option<String>,
    pub summon_progress: f64,
}

#[derive(Debug, Clone)]
pub struct Engine {
    config: Config,
    fsm_cfg: FsmConfig,
    offsets: PlacementOffsets,
    input: InputPipeline,
    fsm: Interaction,
    session: SessionState,
    last_t: Option<f64>,
    last_head: Option<Pose>,
    ui_pose: Option<Pose>,
    gaze_point: Option<PanelPoint>,
    gaze_hover: Option<String>,
}

impl Engine {
    pub fn new(config: Config) -> Self {
        Self {
            fsm_cfg: FsmConfig::from(&config),
            offsets: PlacementOffsets::from(&config),
            input: InputPipeline::new(&config),
            fsm: Interaction::default(),
            session: SessionState::new(config.reference_frame),
            last_t: None,
            last_head: None,
            ui_pose: None,
            gaze_point: None,
            gaze_hover: None,
            config,
        }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn session(&self) -> &SessionState {
        &self.session
    }

    pub fn interaction(&self) -> &Interaction {
        &self.fsm
    }

    /// Panel pose from the latest frame, whether or not the UI is shown.
    pub fn ui_pose(&self) -> Option<Pose> {
        self.ui_pose
    }

    pub fn gaze_point(&self) -> Option<PanelPoint> {
        self.gaze_point
    }

    /// Element the gaze resolved to on the latest frame, tracked even while
    /// the UI is off.
    pub fn gaze_hover(&self) -> Option<&str> {
        self.gaze_hover.as_deref()
    }

    /// Current panel layout, top bar first.
    pub fn elements(&self) -> Vec<crate::targeting::Element> {
        self.session.elements(&self.context(GazeContext::default()))
    }

    fn context(&self, gaze: GazeContext) -> AppContext {
        AppContext::new(&self.config, self.session.reference_frame, gaze)
    }

    /// Hover the given frame would resolve to, without advancing the
    /// session.
    pub fn peek_hover(&self, frame: &TrackingFrame) -> Option<String> {
        let mut probe = self.clone();
        probe.process(frame).ok()?;
        probe.gaze_hover
    }

    pub fn process(&mut self, frame: &TrackingFrame) -> Result<Vec<LogEntry>, EngineError> {
        if !frame.t.is_finite() {
            return Err(EngineError::NonFiniteTime(frame.t));
        }
        if let Some(previous) = self.last_t {
            if frame.t <= previous {
                return Err(EngineError::NonMonotonic { t: frame.t, previous });
            }
        }
        let input = self.input.process(frame);
        // Placement follows the smoothed palm.
        let head = frame.head;
        let palm = input.palm_pose.unwrap_or(head);
        let pose = resolve_ui_pose(self.session.reference_frame, &palm, &head, &self.offsets);
        let extent = self.config.panel_extent();
        let point = frame.valid_gaze().and_then(|r| ray_panel_intersection(r, &pose, &extent));
        let elements = self.session.elements(&self.context(GazeContext::default()));
        let hover = resolve_hover(point, &elements);

        let extra_delta = match (self.config.head_scroll, self.last_head) {
            (true, Some(prev)) if matches!(self.fsm.state, crate::fsm::FsmState::Dragging(_)) => {
                head_scroll_delta(&prev, &head, self.config.head_distance)
            }
            _ => Vec3::ZERO,
        };
        let fsm_input = crate::fsm::FsmInput {
            t: frame.t,
            palm: input.palm,
            pinch: input.pinch,
            pinch_cancelled: input.pinch_cancelled,
            tracking_lost: input.tracking_lost,
            hover: hover.as_deref(),
            palm_position: input.palm_pose.map(|p| p.position),
            panel_orientation: pose.orientation,
            extra_delta,
        };
        let (next, events) = step(&self.fsm, &fsm_input, &self.fsm_cfg);
        self.fsm = next;

        let gaze = GazeContext { point, hover };
        let mut log = Vec::with_capacity(events.len());
        for ev in events {
            let ctx = self.context(gaze.clone());
            let app_events = self.session.handle(&ev.kind, &ctx);
            log.push(LogEntry { t: ev.t, event: LogEvent::Ui(ev.kind) });
            log.extend(app_events.into_iter().map(|a| LogEntry { t: frame.t, event: LogEvent::App(a) }));
        }

        self.last_t = Some(frame.t);
        self.last_head = Some(head);
        self.ui_pose = Some(pose);
        self.gaze_point = gaze.point;
        self.gaze_hover = gaze.hover;
        Ok(log)
    }

    pub fn snapshot(&self) -> Snapshot {
        let ctx = self.context(GazeContext { point: self.gaze_point, hover: self.fsm.hover.clone() });
        let on = !self.fsm.state.is_off();
        Snapshot {
            t: self.last_t,
            fsm: self.fsm.state.name(),
            ui_pose: if on { self.ui_pose } else { None },
            reference_frame: self.session.reference_frame,
            view_model: self.session.view_model(&ctx),
            hover: self.fsm.hover.clone(),
            summon_progress: self.fsm.summon_progress,
        }
    }
}
