#![allow(dead_code)]

use std::io::{BufRead, BufReader, Write};
use std::net::TcpStream;
use std::path::PathBuf;
use std::thread;

use gazepinch::config::Config;
use gazepinch::geometry::{panel_point_to_world, Orientation, Pose, Ray, Vec3};
use gazepinch::harness::codec::{frame_to_json, Trace};
use gazepinch::input::HandSample;
use gazepinch::{Engine, LogEntry, TrackingFrame};
use serde_json::{json, Value};

pub const DT: f64 = 1.0 / 90.0;
pub const HEAD: Vec3 = Vec3 { x: 0.0, y: 1.6, z: 0.0 };
pub const REST_PALM: Vec3 = Vec3 { x: 0.0, y: 1.25, z: -0.38 };

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Scripted single-hand input driven frame by frame through an engine.
/// The palm keeps an identity orientation, so its normal is +Z and points
/// at the head.
pub struct Rig {
    pub engine: Engine,
    pub t: f64,
    pub palm: Vec3,
    pub open: bool,
    pub gap: f64,
    pub look_at: Vec3,
    pub log: Vec<LogEntry>,
}

impl Rig {
    pub fn new(config: Config) -> Self {
        Self { engine: Engine::new(config), t: 0.0, palm: REST_PALM, open: false, gap: 0.06, look_at: REST_PALM, log: Vec::new() }
    }

    pub fn frame(&self) -> TrackingFrame {
        let head = Pose::new(HEAD, Orientation::IDENTITY);
        let ext = if self.open { [1.0; 4] } else { [0.0; 4] };
        TrackingFrame {
            t: self.t,
            head,
            gaze: Ray::toward(HEAD, self.look_at - HEAD).expect("gaze target differs from head"),
            gaze_valid: true,
            hand: HandSample { palm: Pose::new(self.palm, Orientation::IDENTITY), finger_extension: ext, pinch_gap: self.gap },
            hand_valid: true,
        }
    }

    pub fn tick(&mut self) {
        self.t += DT;
        let f = self.frame();
        self.log.extend(self.engine.process(&f).expect("monotonic frames"));
    }

    pub fn hold(&mut self, secs: f64) {
        for _ in 0..(secs / DT).round() as usize {
            self.tick();
        }
    }

    /// Linear palm travel, calling `each` after every frame.
    pub fn move_palm(&mut self, by: Vec3, secs: f64, mut each: impl FnMut(&Engine)) {
        let n = (secs / DT).round() as usize;
        let start = self.palm;
        for i in 1..=n {
            self.palm = start + by * (i as f64 / n as f64);
            self.tick();
            each(&self.engine);
        }
    }

    pub fn summon(&mut self) {
        self.open = true;
        self.hold(0.4);
    }

    /// Points the gaze at an element's centre on the current panel.
    pub fn aim(&mut self, id: &str) {
        let e = self.engine.elements().into_iter().find(|e| e.id == id).unwrap_or_else(|| panic!("no element {id}"));
        let pose = self.engine.ui_pose().expect("panel placed");
        self.look_at = panel_point_to_world(&pose, &self.engine.config().panel_extent(), e.rect.center());
        self.tick();
    }

    pub fn click(&mut self, id: &str) {
        self.aim(id);
        self.hold(0.05);
        self.gap = 0.0;
        self.hold(0.08);
        self.gap = 0.06;
        self.hold(0.1);
    }
}

/// Streams a trace through a live TCP session and returns the received
/// messages.
pub fn tcp_session(addr: std::net::SocketAddr, trace: &Trace, config: &Config) -> Vec<Value> {
    let stream = TcpStream::connect(addr).expect("connect");
    let mut writer = stream.try_clone().expect("clone stream");
    let frames: Vec<String> = trace
        .frames
        .iter()
        .map(|f| {
            let mut v = frame_to_json(f);
            v.as_object_mut().expect("frame object").insert("type".into(), json!("frame"));
            v.to_string()
        })
        .collect();
    let hello = json!({"type": "hello", "version": 1, "config": serde_json::to_value(config).expect("config json")});
    let sender = thread::spawn(move || {
        writeln!(writer, "{hello}").expect("send hello");
        for f in frames {
            writeln!(writer, "{f}").expect("send frame");
        }
        writer.shutdown(std::net::Shutdown::Write).expect("half close");
    });
    let messages = BufReader::new(stream).lines().map(|l| serde_json::from_str(&l.expect("read")).expect("json")).collect();
    sender.join().expect("sender thread");
    messages
}

/// Event messages with the `type` tag dropped, as offline log lines.
pub fn event_lines(messages: &[Value]) -> Vec<String> {
    messages
        .iter()
        .filter(|m| m["type"] == "event")
        .map(|m| {
            let mut m = m.clone();
            m.as_object_mut().expect("object").shift_remove("type");
            m.to_string()
        })
        .collect()
}
