//! Interaction state machine: palm-open summons the UI, gaze picks the
//! hover target, pinch-click selects, pinch-drag translates, palm-close
//! dismisses.
//!
//! [`step`] is a pure function of the previous [`Interaction`] and one
//! frame's [`FsmInput`].

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::geometry::{Orientation, Vec3};
use crate::input::{classify_pinch_gesture, DragBounds, GestureKind, PalmState, PinchPhase};
use crate::targeting::{hover_transition, ElementId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum UiEventKind {
    UiSummoned,
    UiDismissed,
    HoverChanged { from: Option<ElementId>, to: Option<ElementId> },
    Selected { id: ElementId },
    /// `target` is the hover target captured at pinch-down.
    DragStarted { target: Option<ElementId> },
    /// Palm travel since the previous update in the panel's axes:
    /// x right, y up, z forward (away from the viewer).
    DragUpdated { delta: Vec3 },
    DragEnded { committed: bool },
}

impl UiEventKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::UiSummoned => "UiSummoned",
            Self::UiDismissed => "UiDismissed",
            Self::HoverChanged { .. } => "HoverChanged",
            Self::Selected { .. } => "Selected",
            Self::DragStarted { .. } => "DragStarted",
            Self::DragUpdated { .. } => "DragUpdated",
            Self::DragEnded { .. } => "DragEnded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UiEvent {
    pub t: f64,
    pub kind: UiEventKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PendingPinch {
    pub t_down: f64,
    pub pos_down: Vec3,
    pub target: Option<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DragContext {
    pub t_down: f64,
    pub origin: Vec3,
    pub last: Vec3,
    pub target: Option<ElementId>,
    /// Sum of all emitted panel-local deltas.
    pub total: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FsmState {
    UiOff,
    Summoning { progress: f64 },
    Idle,
    PinchPending(PendingPinch),
    Dragging(DragContext),
}

impl FsmState {
    pub fn name(&self) -> &'static str {
        match self {
            Self::UiOff => "UiOff",
            Self::Summoning { .. } => "Summoning",
            Self::Idle => "Idle",
            Self::PinchPending(_) => "PinchPending",
            Self::Dragging(_) => "Dragging",
        }
    }

    pub fn is_off(&self) -> bool {
        matches!(self, Self::UiOff)
    }
}

/// Everything the state machine reads from one frame.
#[derive(Debug, Clone, Copy)]
pub struct FsmInput<'a> {
    pub t: f64,
    pub palm: PalmState,
    pub pinch: PinchPhase,
    pub pinch_cancelled: bool,
    pub tracking_lost: bool,
    pub hover: Option<&'a str>,
    /// Smoothed palm position.
    pub palm_position: Option<Vec3>,
    /// Current panel orientation, used to express drag deltas.
    pub panel_orientation: Orientation,
    /// Extra panel-local travel added to drag updates (head-motion scroll).
    pub extra_delta: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsmConfig {
    pub drag: DragBounds,
    pub summon_duration: f64,
}

impl Default for FsmConfig {
    fn default() -> Self {
        Self::from(&Config::default())
    }
}

impl From<&Config> for FsmConfig {
    fn from(c: &Config) -> Self {
        Self { drag: c.into(), summon_duration: c.summon_duration }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interaction {
    pub state: FsmState,
    /// Scale-up progress in `[0, 1]`; keeps advancing while pinching.
    pub summon_progress: f64,
    pub hover: Option<ElementId>,
    pub last_t: Option<f64>,
}

impl Default for Interaction {
    fn default() -> Self {
        Self { state: FsmState::UiOff, summon_progress: 0.0, hover: None, last_t: None }
    }
}

/// World delta to panel axes with z pointing away from the viewer.
pub fn panel_local_delta(panel: Orientation, world: Vec3) -> Vec3 {
    let local = panel.inverse_rotate(world);
    Vec3::new(local.x, local.y, -local.z)
}

fn resting_state(progress: f64) -> FsmState {
    if progress < 1.0 {
        FsmState::Summoning { progress }
    } else {
        FsmState::Idle
    }
}

pub fn step(current: &Interaction, input: &FsmInput<'_>, cfg: &FsmConfig) -> (Interaction, Vec<UiEvent>) {
    let t = input.t;
    let mut events = Vec::new();
    let mut emit = |kind: UiEventKind| events.push(UiEvent { t, kind });
    let mut next = current.clone();
    next.last_t = Some(t);

    if input.palm == PalmState::Closed || input.tracking_lost {
        if !current.state.is_off() {
            if matches!(current.state, FsmState::Dragging(_)) {
                emit(UiEventKind::DragEnded { committed: true });
            }
            emit(UiEventKind::UiDismissed);
        }
        next.state = FsmState::UiOff;
        next.summon_progress = 0.0;
        next.hover = None;
        return (next, events);
    }

    let summoned_now = current.state.is_off();
    if summoned_now {
        emit(UiEventKind::UiSummoned);
        next.summon_progress = 0.0;
        next.state = FsmState::Summoning { progress: 0.0 };
    } else if let Some(prev) = current.last_t {
        let dt = (t - prev).max(0.0);
        next.summon_progress = (current.summon_progress + dt / cfg.summon_duration).min(1.0);
    }

    if let Some(ev) = hover_transition(current.hover.as_deref(), input.hover) {
        emit(ev);
        next.hover = input.hover.map(str::to_owned);
    }

    if summoned_now {
        return (next, events);
    }

    let palm_pos = input.palm_position;
    let progress = next.summon_progress;
    next.state = match &current.state {
        FsmState::UiOff => unreachable!("handled above"),
        FsmState::Summoning { .. } | FsmState::Idle => match (input.pinch, palm_pos) {
            (PinchPhase::Down, Some(pos)) => FsmState::PinchPending(PendingPinch {
                t_down: t,
                pos_down: pos,
                target: next.hover.clone(),
            }),
            _ => resting_state(progress),
        },
        FsmState::PinchPending(p) => {
            let pos = palm_pos.unwrap_or(p.pos_down);
            let kind = classify_pinch_gesture(t - p.t_down, pos.distance(p.pos_down), cfg.drag);
            if input.pinch_cancelled {
                resting_state(progress)
            } else if input.pinch == PinchPhase::Up {
                if kind == GestureKind::Click {
                    if let Some(id) = &p.target {
                        emit(UiEventKind::Selected { id: id.clone() });
                    }
                }
                resting_state(progress)
            } else if kind == GestureKind::Drag {
                emit(UiEventKind::DragStarted { target: p.target.clone() });
                let delta = panel_local_delta(input.panel_orientation, pos - p.pos_down) + input.extra_delta;
                if delta != Vec3::ZERO {
                    emit(UiEventKind::DragUpdated { delta });
                }
                FsmState::Dragging(DragContext {
                    t_down: p.t_down,
                    origin: p.pos_down,
                    last: pos,
                    target: p.target.clone(),
                    total: delta,
                })
            } else {
                FsmState::PinchPending(p.clone())
            }
        }
        FsmState::Dragging(d) => {
            if input.pinch_cancelled {
                emit(UiEventKind::DragEnded { committed: false });
                resting_state(progress)
            } else if input.pinch == PinchPhase::Up {
                emit(UiEventKind::DragEnded { committed: true });
                resting_state(progress)
            } else {
                let pos = palm_pos.unwrap_or(d.last);
                let delta = panel_local_delta(input.panel_orientation, pos - d.last) + input.extra_delta;
                if delta != Vec3::ZERO {
                    emit(UiEventKind::DragUpdated { delta });
                }
                FsmState::Dragging(DragContext { last: pos, total: d.total + delta, ..d.clone() })
            }
        }
    };
    (next, events)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Driver {
        fsm: Interaction,
        cfg: FsmConfig,
        t: f64,
        log: Vec<UiEvent>,
    }

    impl Driver {
        fn new() -> Self {
            Self { fsm: Interaction::default(), cfg: FsmConfig::default(), t: 0.0, log: Vec::new() }
        }

        fn frame(&mut self, palm: PalmState, pinch: PinchPhase, hover: Option<&str>, pos: Vec3) -> Vec<UiEvent> {
            let input = FsmInput {
                t: self.t,
                palm,
                pinch,
                pinch_cancelled: false,
                tracking_lost: false,
                hover,
                palm_position: Some(pos),
                panel_orientation: Orientation::IDENTITY,
                extra_delta: Vec3::ZERO,
            };
            let (next, ev) = step(&self.fsm, &input, &self.cfg);
            self.fsm = next;
            self.t += 1.0 / 90.0;
            self.log.extend(ev.iter().cloned());
            ev
        }

        fn kinds(&self) -> Vec<UiEventKind> {
            self.log.iter().map(|e| e.kind.clone()).collect()
        }
    }

    use PalmState::*;
    use PinchPhase::*;

    #[test]
    fn palm_open_look_pinch_plays_song() {
        let mut d = Driver::new();
        let p = Vec3::new(0.0, 1.2, -0.4);
        d.frame(Open, Up, None, p);
        for _ in 0..22 {
            d.frame(Open, Up, Some("song4"), p);
        }
        // 150 ms pinch with 3 mm of palm travel.
        for i in 0..14 {
            d.frame(Open, Down, Some("song4"), p + Vec3::new(0.003 * i as f64 / 13.0, 0.0, 0.0));
        }
        d.frame(Open, Up, Some("song4"), p + Vec3::new(0.003, 0.0, 0.0));
        assert_eq!(
            d.kinds(),
            vec![
                UiEventKind::UiSummoned,
                UiEventKind::HoverChanged { from: None, to: Some("song4".into()) },
                UiEventKind::Selected { id: "song4".into() },
            ]
        );
        assert_eq!(d.fsm.state, FsmState::Idle);
    }

    #[test]
    fn selection_uses_target_captured_at_pinch_down() {
        let mut d = Driver::new();
        let p = Vec3::ZERO;
        d.frame(Open, Up, Some("a"), p);
        d.frame(Open, Down, Some("a"), p);
        d.frame(Open, Down, Some("b"), p);
        d.frame(Open, Up, Some("b"), p);
        assert!(d.kinds().contains(&UiEventKind::Selected { id: "a".into() }));
        assert!(!d.kinds().contains(&UiEventKind::Selected { id: "b".into() }));
    }

    #[test]
    fn selectable_while_summoning() {
        let mut d = Driver::new();
        d.frame(Open, Up, Some("a"), Vec3::ZERO);
        d.frame(Open, Down, Some("a"), Vec3::ZERO);
        assert!(matches!(d.fsm.state, FsmState::PinchPending(_)));
        d.frame(Open, Up, Some("a"), Vec3::ZERO);
        assert!(matches!(d.fsm.state, FsmState::Summoning { .. }));
        assert_eq!(d.log.last().unwrap().kind, UiEventKind::Selected { id: "a".into() });
    }

    #[test]
    fn summon_completes_after_duration() {
        let mut d = Driver::new();
        for _ in 0..23 {
            d.frame(Open, Up, None, Vec3::ZERO);
        }
        // 22 steps of 1/90 s = 0.244 s.
        assert!(matches!(d.fsm.state, FsmState::Summoning { .. }));
        d.frame(Open, Up, None, Vec3::ZERO);
        assert_eq!(d.fsm.state, FsmState::Idle);
        assert_eq!(d.fsm.summon_progress, 1.0);
    }

    #[test]
    fn drag_then_palm_close_commits_and_dismisses() {
        let mut d = Driver::new();
        let mut p = Vec3::ZERO;
        d.frame(Open, Up, Some("x"), p);
        d.frame(Open, Down, Some("x"), p);
        for _ in 0..5 {
            p += Vec3::new(0.01, 0.0, 0.0);
            d.frame(Open, Down, Some("x"), p);
        }
        assert!(matches!(d.fsm.state, FsmState::Dragging(_)));
        let ev = d.frame(Closed, Down, Some("x"), p);
        let kinds: Vec<_> = ev.into_iter().map(|e| e.kind).collect();
        assert_eq!(kinds, vec![UiEventKind::DragEnded { committed: true }, UiEventKind::UiDismissed]);
        assert_eq!(d.fsm.state, FsmState::UiOff);
    }

    #[test]
    fn drag_deltas_sum_to_palm_travel() {
        let mut d = Driver::new();
        let mut p = Vec3::ZERO;
        d.frame(Open, Up, None, p);
        d.frame(Open, Down, None, p);
        for _ in 0..20 {
            p += Vec3::new(0.004, -0.001, -0.002);
            d.frame(Open, Down, None, p);
        }
        d.frame(Open, Up, None, p);
        let total = d
            .log
            .iter()
            .filter_map(|e| match e.kind {
                UiEventKind::DragUpdated { delta } => Some(delta),
                _ => None,
            })
            .fold(Vec3::ZERO, |a, b| a + b);
        // Identity panel: world −Z is panel forward.
        assert!(total.distance(Vec3::new(0.08, -0.02, 0.04)) < 1e-12);
        assert_eq!(d.log.last().unwrap().kind, UiEventKind::DragEnded { committed: true });
    }

    #[test]
    fn long_still_pinch_becomes_drag_without_selection() {
        let mut d = Driver::new();
        d.frame(Open, Up, Some("a"), Vec3::ZERO);
        for _ in 0..30 {
            d.frame(Open, Down, Some("a"), Vec3::ZERO);
        }
        d.frame(Open, Up, Some("a"), Vec3::ZERO);
        let kinds = d.kinds();
        assert!(kinds.contains(&UiEventKind::DragStarted { target: Some("a".into()) }));
        assert!(!kinds.iter().any(|k| matches!(k, UiEventKind::Selected { .. })));
    }

    #[test]
    fn tracking_loss_cancels_then_dismisses() {
        let cfg = FsmConfig::default();
        let mut fsm = Interaction::default();
        let mut input = FsmInput {
            t: 0.0,
            palm: Open,
            pinch: Up,
            pinch_cancelled: false,
            tracking_lost: false,
            hover: Some("a"),
            palm_position: Some(Vec3::ZERO),
            panel_orientation: Orientation::IDENTITY,
            extra_delta: Vec3::ZERO,
        };
        let mut all = Vec::new();
        let mut run = |fsm: &mut Interaction, input: &FsmInput| {
            let (n, ev) = step(fsm, input, &cfg);
            *fsm = n;
            all.extend(ev.into_iter().map(|e| e.kind));
        };
        run(&mut fsm, &input);
        input.t = 0.01;
        input.pinch = Down;
        run(&mut fsm, &input);
        // Hand vanishes mid-pinch: the pinch is cancelled, nothing selected.
        input.t = 0.02;
        input.pinch = Up;
        input.pinch_cancelled = true;
        run(&mut fsm, &input);
        input.t = 0.30;
        input.pinch_cancelled = false;
        input.tracking_lost = true;
        run(&mut fsm, &input);
        assert!(!all.iter().any(|k| matches!(k, UiEventKind::Selected { .. })));
        assert_eq!(all.last(), Some(&UiEventKind::UiDismissed));
        assert!(fsm.state.is_off());
    }

    #[test]
    fn step_is_deterministic() {
        let mut a = Driver::new();
        let mut b = Driver::new();
        for i in 0..200 {
            let palm = if i % 70 < 60 { Open } else { Closed };
            let pinch = if i % 17 < 6 { Down } else { Up };
            let hover = ["a", "b", "c"][i % 3];
            let p = Vec3::new((i as f64 * 0.1).sin() * 0.05, 0.0, 0.0);
            a.frame(palm, pinch, Some(hover), p);
            b.frame(palm, pinch, Some(hover), p);
        }
        assert_eq!(a.log, b.log);
        assert_eq!(a.fsm, b.fsm);
    }
}
