//! Synthetic traces of a simulated user doing the study tasks.
//!
//! The user runs in lockstep with an engine: each frame is built, quantized
//! to what the trace file will hold, and fed to the engine, so the script
//! can wait on what the user would see (the hover highlight, the summon
//! animation). Gaze lands on its target with a fresh angular error per
//! fixation; when that error would put the hover somewhere else the user
//! makes a corrective saccade, i.e. the error is redrawn.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::codec::{quantize, quantize_frame, Trace, TraceHeader, TRACE_VERSION};
use super::task::{Goal, TaskSpec, UnknownScenario};
use crate::config::Config;
use crate::engine::Engine;
use crate::fsm::FsmState;
use crate::geometry::{billboard_toward, panel_point_to_world, Orientation, PanelPoint, Pose, Ray, Vec3};
use crate::input::{HandSample, TrackingFrame};
use crate::navigation::content_to_panel;
use crate::reference_frame::ReferenceFrame;

pub const HEAD_POSITION: Vec3 = Vec3::new(0.0, 1.6, 0.0);
/// Palm rest position for each reference frame.
const REST_ON_HAND: Vec3 = Vec3::new(0.0, 1.25, -0.38);
const REST_ABOVE_HAND: Vec3 = Vec3::new(0.05, 1.02, -0.30);
const REST_HEAD_REFERENCED: Vec3 = Vec3::new(0.10, 1.20, -0.35);

const OPEN_EXTENSION: f64 = 0.95;
const CLOSED_EXTENSION: f64 = 0.10;
const RELEASED_GAP: f64 = 0.05;
const PINCHED_GAP: f64 = 0.008;
/// Corrective saccades allowed before the user fixates the target exactly.
const MAX_CORRECTIONS: usize = 20;
/// How far (panel units) a fixation on a map point may land from it.
const POINT_TOLERANCE: f64 = 0.04;

#[derive(Debug, Clone)]
pub struct ScenarioOptions {
    /// Standard deviation of the per-fixation gaze error on yaw and pitch.
    pub gaze_noise_deg: f64,
    pub config: Config,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        Self { gaze_noise_deg: 1.0, config: Config::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Aim {
    Ahead,
    Element(String),
    PanelPoint(PanelPoint),
    MapContent([f64; 2]),
}

/// Quintic minimum-jerk profile on `s` in [0, 1].
pub fn minimum_jerk(s: f64) -> f64 {
    let s = s.clamp(0.0, 1.0);
    s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
}

fn rest_position(frame: ReferenceFrame) -> Vec3 {
    match frame {
        ReferenceFrame::OnHand => REST_ON_HAND,
        ReferenceFrame::AboveHand => REST_ABOVE_HAND,
        ReferenceFrame::HeadReferenced => REST_HEAD_REFERENCED,
    }
}

/// Palm orientation facing the head.
fn facing_head(palm: Vec3) -> Orientation {
    billboard_toward(palm, HEAD_POSITION, Vec3::Y).expect("palm away from head")
}

struct Sim {
    engine: Engine,
    rng: ChaCha8Rng,
    noise: Option<Normal<f64>>,
    rate: f64,
    index: u64,
    frames: Vec<TrackingFrame>,
    head: Pose,
    palm: Pose,
    extension: f64,
    gap: f64,
    hand_valid: bool,
    gaze_valid: bool,
    aim: Aim,
    offset: (f64, f64),
}

impl Sim {
    fn new(options: &ScenarioOptions, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1);
        let sigma = options.gaze_noise_deg.to_radians();
        let rest = rest_position(options.config.reference_frame);
        Self {
            engine: Engine::new(options.config.clone()),
            rng,
            noise: (sigma > 0.0).then(|| Normal::new(0.0, sigma).expect("finite sigma")),
            rate: options.config.frame_rate as f64,
            index: 0,
            frames: Vec::new(),
            head: Pose::new(HEAD_POSITION, Orientation::IDENTITY),
            palm: Pose::new(rest, facing_head(rest)),
            extension: CLOSED_EXTENSION,
            gap: RELEASED_GAP,
            hand_valid: true,
            gaze_valid: true,
            aim: Aim::Ahead,
            offset: (0.0, 0.0),
        }
    }

    fn draw_offset(&mut self) -> (f64, f64) {
        match self.noise {
            Some(n) => (n.sample(&mut self.rng), n.sample(&mut self.rng)),
            None => (0.0, 0.0),
        }
    }

    /// New fixation on `aim`.
    fn look(&mut self, aim: Aim) {
        self.aim = aim;
        self.offset = self.draw_offset();
    }

    fn frame_with_gaze(&self, t: f64, dir: Vec3) -> TrackingFrame {
        quantize_frame(&TrackingFrame {
            t,
            head: self.head,
            gaze: Ray::toward(self.head.position, dir).expect("gaze direction"),
            gaze_valid: self.gaze_valid,
            hand: HandSample {
                palm: self.palm,
                finger_extension: [self.extension; 4],
                pinch_gap: self.gap,
            },
            hand_valid: self.hand_valid,
        })
    }

    /// Panel point the current aim refers to, before this frame.
    fn aim_point(&self) -> Option<PanelPoint> {
        match &self.aim {
            Aim::Ahead => None,
            Aim::Element(id) => self.engine.elements().into_iter().find(|e| &e.id == id).map(|e| e.rect.center()),
            Aim::PanelPoint(p) => Some(*p),
            Aim::MapContent(c) => {
                let view = self.engine.session().map.view;
                Some(content_to_panel(&view, *c, self.engine.config().panel_height / self.engine.config().panel_width))
            }
        }
    }

    fn perturbed(dir: Vec3, (dyaw, dpitch): (f64, f64)) -> Vec3 {
        let yaw = dir.x.atan2(-dir.z) + dyaw;
        let pitch = dir.y.clamp(-1.0, 1.0).asin() + dpitch;
        Vec3::new(yaw.sin() * pitch.cos(), pitch.sin(), -yaw.cos() * pitch.cos())
    }

    fn accepts(&self, frame: &TrackingFrame, target: Option<PanelPoint>) -> bool {
        let mut probe = self.engine.clone();
        if probe.process(frame).is_err() {
            return false;
        }
        match &self.aim {
            Aim::Element(id) => probe.gaze_hover() == Some(id.as_str()),
            Aim::MapContent(_) => match (probe.gaze_point(), target) {
                (Some(g), Some(p)) => ((g.u - p.u).powi(2) + (g.v - p.v).powi(2)).sqrt() <= POINT_TOLERANCE,
                _ => false,
            },
            Aim::Ahead | Aim::PanelPoint(_) => true,
        }
    }

    fn step(&mut self) {
        let t = quantize(self.index as f64 / self.rate);
        let eye = self.head.position;
        let ahead = self.head.orientation.forward();
        let target = self.aim_point();
        let world_aim = target.and_then(|p| {
            let mut probe = self.engine.clone();
            probe.process(&self.frame_with_gaze(t, ahead)).ok()?;
            let pose = probe.ui_pose()?;
            Some(panel_point_to_world(&pose, &self.engine.config().panel_extent(), p))
        });
        let base = world_aim.and_then(|w| (w - eye).try_normalize()).unwrap_or(ahead);

        let mut frame = self.frame_with_gaze(t, Self::perturbed(base, self.offset));
        if world_aim.is_some() && self.offset != (0.0, 0.0) && !self.accepts(&frame, target) {
            let mut settled = false;
            for _ in 0..MAX_CORRECTIONS {
                self.offset = self.draw_offset();
                frame = self.frame_with_gaze(t, Self::perturbed(base, self.offset));
                if self.accepts(&frame, target) {
                    settled = true;
                    break;
                }
            }
            if !settled {
                self.offset = (0.0, 0.0);
                frame = self.frame_with_gaze(t, base);
            }
        }
        self.engine.process(&frame).expect("generated frames advance in time");
        self.frames.push(frame);
        self.index += 1;
    }

    fn frames_for(&self, seconds: f64) -> usize {
        (seconds * self.rate).round().max(1.0) as usize
    }

    fn wait(&mut self, seconds: f64) {
        for _ in 0..self.frames_for(seconds) {
            self.step();
        }
    }

    /// Steps until `done` holds or `timeout` passes; true if it held.
    fn wait_until(&mut self, timeout: f64, done: impl Fn(&Engine) -> bool) -> bool {
        for _ in 0..self.frames_for(timeout) {
            if done(&self.engine) {
                return true;
            }
            self.step();
        }
        done(&self.engine)
    }

    fn ramp(&mut self, seconds: f64, mut apply: impl FnMut(&mut Self, f64)) {
        let n = self.frames_for(seconds);
        for i in 1..=n {
            apply(self, minimum_jerk(i as f64 / n as f64));
            self.step();
        }
    }

    fn move_palm(&mut self, to: Vec3, seconds: f64) {
        let from = self.palm.position;
        self.ramp(seconds, |s, k| s.palm.position = from + (to - from) * k);
    }

    fn set_extension(&mut self, to: f64, seconds: f64) {
        let from = self.extension;
        self.ramp(seconds, |s, k| s.extension = from + (to - from) * k);
    }

    fn set_gap(&mut self, to: f64, seconds: f64) {
        let from = self.gap;
        self.ramp(seconds, |s, k| s.gap = from + (to - from) * k);
    }

    fn open_palm(&mut self) {
        self.set_extension(OPEN_EXTENSION, 0.12);
    }

    fn close_palm(&mut self) {
        self.set_extension(CLOSED_EXTENSION, 0.12);
    }

    fn pinch_down(&mut self) {
        self.set_gap(PINCHED_GAP, 0.045);
    }

    fn pinch_up(&mut self) {
        self.set_gap(RELEASED_GAP, 0.045);
    }

    /// Unit vector pointing away from the viewer through the palm.
    fn push_direction(&self) -> Vec3 {
        -self.palm.orientation.normal()
    }

    fn wait_for_hover(&mut self, id: &str) -> bool {
        let id = id.to_string();
        self.wait_until(2.0, move |e| e.interaction().hover.as_deref() == Some(id.as_str()))
    }

    /// Look at an element and pinch-click it once highlighted.
    fn click(&mut self, id: &str) {
        self.look(Aim::Element(id.to_string()));
        self.wait_for_hover(id);
        self.wait(0.12);
        self.pinch_down();
        self.wait(0.05);
        self.pinch_up();
        self.wait(0.1);
    }

    fn summon(&mut self) {
        self.open_palm();
        self.wait_until(1.0, |e| !e.interaction().state.is_off());
    }

    fn dismiss(&mut self) {
        self.look(Aim::Ahead);
        self.close_palm();
        self.wait(0.3);
    }

    fn open_app(&mut self, app: &str) {
        self.summon();
        self.wait_until(1.0, |e| matches!(e.interaction().state, FsmState::Idle));
        self.click(&format!("home.{app}"));
    }

    fn into_trace(self, seed: u64) -> Trace {
        let config = self.engine.config();
        Trace {
            header: TraceHeader { version: TRACE_VERSION, frame_rate: config.frame_rate, seed, config: config.digest() },
            frames: self.frames,
        }
    }
}

fn music_quick_play(sim: &mut Sim, task: &TaskSpec) {
    let Goal::Selected { id: track } = &task.goal else { unreachable!("music goal") };
    sim.wait(0.3);
    // Leave the music app open, as a returning user would.
    sim.open_app("music");
    sim.dismiss();
    // The timed compound action: palm open, gaze at the track, pinch.
    sim.open_palm();
    sim.click(track);
    sim.wait(0.2);
    sim.dismiss();
}

fn favorites_find_file(sim: &mut Sim, task: &TaskSpec) {
    let Goal::DetailOpened { item, .. } = &task.goal else { unreachable!("favorites goal") };
    sim.wait(0.3);
    sim.open_app("favorites");
    sim.click(item);
    // Reading the file details.
    sim.look(Aim::PanelPoint(PanelPoint::new(0.5, 0.4)));
    sim.wait(0.6);
    sim.click("favorites.back");
    sim.dismiss();
}

fn gallery_find_image(sim: &mut Sim, task: &TaskSpec) {
    let (album, image) = task.gallery_target().expect("gallery goal");
    let album_el = crate::apps::gallery::album_id(album);
    let image_el = crate::apps::gallery::image_id(album, image);
    sim.wait(0.3);
    sim.open_app("gallery");
    sim.look(Aim::Element(album_el.clone()));
    sim.wait_for_hover(&album_el);
    sim.wait(0.12);
    sim.pinch_down();
    let push = sim.push_direction();
    let start = sim.palm.position;
    // First layer crossing at half the layer spacing.
    sim.move_palm(start + push * 0.045, 0.35);
    sim.wait(0.12);
    sim.look(Aim::Element(image_el.clone()));
    sim.wait_for_hover(&image_el);
    sim.wait(0.1);
    sim.move_palm(start + push * 0.095, 0.35);
    sim.wait(0.12);
    sim.pinch_up();
    sim.look(Aim::PanelPoint(PanelPoint::new(0.5, 0.4)));
    sim.wait(0.4);
    sim.dismiss();
    sim.move_palm(start, 0.3);
}

fn map_find_marker(sim: &mut Sim, task: &TaskSpec) {
    let Goal::MapMarker { position, .. } = &task.goal else { unreachable!("map goal") };
    sim.wait(0.3);
    sim.open_app("map");
    sim.look(Aim::MapContent(*position));
    sim.wait(0.25);
    sim.pinch_down();
    let push = sim.push_direction();
    let start = sim.palm.position;
    // Two zoom doublings, with margin.
    sim.move_palm(start + push * 0.11, 0.7);
    sim.wait(0.2);
    sim.pinch_up();
    sim.wait(0.3);
    sim.dismiss();
    sim.move_palm(start, 0.3);
}

/// Random but well-formed behaviour: palm flicks, saccades, clicks, drags,
/// tracking dropouts and blinks.
fn fuzz_random(sim: &mut Sim) {
    let end = 20.0;
    let rest = sim.palm.position;
    while (sim.index as f64) / sim.rate < end {
        match sim.rng.random_range(0..9) {
            0 => {
                if sim.extension > 0.5 {
                    sim.close_palm()
                } else {
                    sim.open_palm()
                }
            }
            1 | 2 => {
                let els = sim.engine.elements();
                let pick = sim.rng.random_range(0..els.len());
                sim.look(Aim::Element(els[pick].id.clone()));
                let dwell = sim.rng.random_range(0.05..0.4);
                sim.wait(dwell);
            }
            3 => {
                let p = PanelPoint::new(sim.rng.random_range(-0.3..1.3), sim.rng.random_range(-0.3..1.3));
                sim.look(Aim::PanelPoint(p));
                let dwell = sim.rng.random_range(0.05..0.3);
                sim.wait(dwell);
            }
            4 => {
                sim.pinch_down();
                let hold = sim.rng.random_range(0.02..0.4);
                sim.wait(hold);
                sim.pinch_up();
            }
            5 => {
                sim.pinch_down();
                let d = Vec3::new(
                    sim.rng.random_range(-0.08..0.08),
                    sim.rng.random_range(-0.08..0.08),
                    sim.rng.random_range(-0.08..0.08),
                );
                let to = rest + d;
                let secs = sim.rng.random_range(0.1..0.6);
                sim.move_palm(to, secs);
                sim.pinch_up();
                sim.move_palm(rest, 0.2);
            }
            6 => {
                sim.hand_valid = false;
                let gone = sim.rng.random_range(0.05..0.5);
                sim.wait(gone);
                sim.hand_valid = true;
            }
            7 => {
                sim.gaze_valid = false;
                sim.wait(0.1);
                sim.gaze_valid = true;
            }
            _ => {
                sim.look(Aim::Ahead);
                let idle = sim.rng.random_range(0.05..0.5);
                sim.wait(idle);
            }
        }
    }
}

pub fn generate_scenario(name: &str, seed: u64) -> Result<Trace, UnknownScenario> {
    generate_scenario_with(name, seed, &ScenarioOptions::default())
}

pub fn generate_scenario_with(name: &str, seed: u64, options: &ScenarioOptions) -> Result<Trace, UnknownScenario> {
    let task = TaskSpec::for_scenario(name, seed)?;
    let mut sim = Sim::new(options, seed);
    match name {
        "music-quick-play" => music_quick_play(&mut sim, &task),
        "favorites-find-file" => favorites_find_file(&mut sim, &task),
        "gallery-find-image" => gallery_find_image(&mut sim, &task),
        "map-find-marker" => map_find_marker(&mut sim, &task),
        _ => fuzz_random(&mut sim),
    }
    Ok(sim.into_trace(seed))
}
