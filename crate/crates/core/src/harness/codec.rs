//! Line-delimited JSON for traces and event logs. Every float is written
//! with exactly nine significant digits so logs can be compared byte for
//! byte.

use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::apps::music::PlayStatus;
use crate::apps::notifications::NotificationAction;
use crate::apps::{AppEvent, AppId};
use crate::engine::{LogEntry, LogEvent};
use crate::fsm::UiEventKind;
use crate::geometry::{Orientation, Pose, Ray, Vec3};
use crate::input::{HandSample, TrackingFrame};
use crate::reference_frame::ReferenceFrame;

pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Nine significant digits in plain decimal notation where the exponent
/// allows, scientific otherwise. Negative zero prints as zero.
pub fn fmt9(x: f64) -> String {
    assert!(x.is_finite(), "cannot serialize non-finite value {x}");
    let x = if x == 0.0 { 0.0 } else { x };
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if !(-7..9).contains(&exp) {
        return format!("{sign}{mantissa}e{exp}");
    }
    if exp >= 0 {
        let point = exp as usize + 1;
        let (int, frac) = digits.split_at(point);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    }
}

/// Rounds to the value [`fmt9`] would print.
pub fn quantize(x: f64) -> f64 {
    fmt9(x).parse().expect("fmt9 output parses")
}

pub fn quantize_vec(v: Vec3) -> Vec3 {
    Vec3::new(quantize(v.x), quantize(v.y), quantize(v.z))
}

pub fn quantize_orientation(q: Orientation) -> Orientation {
    let [w, x, y, z] = q.to_wxyz();
    Orientation { w: quantize(w), x: quantize(x), y: quantize(y), z: quantize(z) }
}

/// The frame as it will read back from a trace file.
pub fn quantize_frame(f: &TrackingFrame) -> TrackingFrame {
    let pose = |p: Pose| Pose::new(quantize_vec(p.position), quantize_orientation(p.orientation));
    TrackingFrame {
        t: quantize(f.t),
        head: pose(f.head),
        gaze: Ray::new(quantize_vec(f.gaze.origin), quantize_vec(f.gaze.direction())).expect("quantized unit ray"),
        gaze_valid: f.gaze_valid,
        hand: HandSample {
            palm: pose(f.hand.palm),
            finger_extension: f.hand.finger_extension.map(quantize),
            pinch_gap: quantize(f.hand.pinch_gap),
        },
        hand_valid: f.hand_valid,
    }
}

pub fn num(x: f64) -> Value {
    Value::Number(fmt9(x).parse::<Number>().expect("valid JSON number"))
}

fn arr(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceHeader {
    pub version: u32,
    pub frame_rate: u32,
    pub seed: u64,
    pub config: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub header: TraceHeader,
    pub frames: Vec<TrackingFrame>,
}

pub fn header_to_json(h: &TraceHeader) -> Value {
    json!({"version": h.version, "frame_rate": h.frame_rate, "seed": h.seed, "config": h.config})
}

pub fn frame_to_json(f: &TrackingFrame) -> Value {
    json!({
        "t": num(f.t),
        "head": {"p": arr(&f.head.position.to_array()), "q": arr(&f.head.orientation.to_wxyz())},
        "gaze": {"o": arr(&f.gaze.origin.to_array()), "d": arr(&f.gaze.direction().to_array()), "valid": f.gaze_valid},
        "hand": {
            "p": arr(&f.hand.palm.position.to_array()),
            "q": arr(&f.hand.palm.orientation.to_wxyz()),
            "ext": arr(&f.hand.finger_extension),
            "gap": num(f.hand.pinch_gap),
            "valid": f.hand_valid,
        },
    })
}

pub fn serialize_trace(trace: &Trace) -> String {
    let mut out = header_to_json(&trace.header).to_string();
    out.push('\n');
    for f in &trace.frames {
        out.push_str(&frame_to_json(f).to_string());
        out.push('\n');
    }
    out
}

/// Typed field access with error messages that name the key.
struct Fields<'a> {
    obj: &'a Map<String, Value>,
    line: usize,
    path: String,
}

impl<'a> Fields<'a> {
    fn new(v: &'a Value, line: usize, path: &str) -> Result<Self, ParseError> {
        let obj = v.as_object().ok_or_else(|| err(line, format!("{path}: expected an object")))?;
        Ok(Self { obj, line, path: path.to_string() })
    }

    fn key(&self, k: &str) -> String {
        if self.path.is_empty() {
            k.to_string()
        } else {
            format!("{}.{k}", self.path)
        }
    }

    fn get(&self, k: &str) -> Result<&'a Value, ParseError> {
        self.obj.get(k).ok_or_else(|| err(self.line, format!("missing key {}", self.key(k))))
    }

    fn only(&self, keys: &[&str]) -> Result<(), ParseError> {
        match self.obj.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(err(self.line, format!("unknown key {}", self.key(k)))),
            None => Ok(()),
        }
    }

    fn f64(&self, k: &str) -> Result<f64, ParseError> {
        self.get(k)?.as_f64().ok_or_else(|| err(self.line, format!("{}: expected a number", self.key(k))))
    }

    fn u64(&self, k: &str) -> Result<u64, ParseError> {
        self.get(k)?.as_u64().ok_or_else(|| err(self.line, format!("{}: expected an unsigned integer", self.key(k))))
    }

    fn bool(&self, k: &str) -> Result<bool, ParseError> {
        self.get(k)?.as_bool().ok_or_else(|| err(self.line, format!("{}: expected a boolean", self.key(k))))
    }

    fn str(&self, k: &str) -> Result<&'a str, ParseError> {
        self.get(k)?.as_str().ok_or_else(|| err(self.line, format!("{}: expected a string", self.key(k))))
    }

    fn opt_str(&self, k: &str) -> Result<Option<String>, ParseError> {
        match self.get(k)? {
            Value::Null => Ok(None),
            Value::String(s) => Ok(Some(s.clone())),
            _ => Err(err(self.line, format!("{}: expected a string or null", self.key(k)))),
        }
    }

    fn array<const N: usize>(&self, k: &str) -> Result<[f64; N], ParseError> {
        let bad = || err(self.line, format!("{}: expected {N} numbers", self.key(k)));
        let a = self.get(k)?.as_array().ok_or_else(bad)?;
        if a.len() != N {
            return Err(bad());
        }
        let mut out = [0.0; N];
        for (o, v) in out.iter_mut().zip(a) {
            *o = v.as_f64().ok_or_else(bad)?;
        }
        Ok(out)
    }

    fn vec3(&self, k: &str) -> Result<Vec3, ParseError> {
        let v = Vec3::from_array(self.array::<3>(k)?);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(err(self.line, format!("{}: non-finite value", self.key(k))))
        }
    }

    fn orientation(&self, k: &str) -> Result<Orientation, ParseError> {
        Orientation::from_wxyz(self.array::<4>(k)?).map_err(|e| err(self.line, format!("{}: {e}", self.key(k))))
    }

    fn nested(&self, k: &str) -> Result<Fields<'a>, ParseError> {
        Fields::new(self.get(k)?, self.line, &self.key(k))
    }
}

fn parse_line(text: &str, line: usize) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| err(line, format!("invalid JSON: {e}")))
}

pub fn parse_header(v: &Value, line: usize) -> Result<TraceHeader, ParseError> {
    let f = Fields::new(v, line, "")?;
    f.only(&["version", "frame_rate", "seed", "config"])?;
    let version = f.u64("version")?;
    if version != TRACE_VERSION as u64 {
        return Err(err(line, format!("unsupported trace version {version}")));
    }
    let frame_rate = u32::try_from(f.u64("frame_rate")?).map_err(|_| err(line, "frame_rate out of range"))?;
    Ok(TraceHeader { version: TRACE_VERSION, frame_rate, seed: f.u64("seed")?, config: f.str("config")?.to_string() })
}

/// Reads one frame object; `skip` names keys to ignore (the session
/// protocol adds a `type` tag).
pub fn parse_frame(v: &Value, line: usize, skip: &[&str]) -> Result<TrackingFrame, ParseError> {
    let f = Fields::new(v, line, "")?;
    let mut allowed = vec!["t", "head", "gaze", "hand"];
    allowed.extend_from_slice(skip);
    f.only(&allowed)?;
    let t = f.f64("t")?;
    if !t.is_finite() {
        return Err(err(line, "t: non-finite"));
    }
    let head = f.nested("head")?;
    head.only(&["p", "q"])?;
    let gaze = f.nested("gaze")?;
    gaze.only(&["o", "d", "valid"])?;
    let hand = f.nested("hand")?;
    hand.only(&["p", "q", "ext", "gap", "valid"])?;
    let ray = Ray::new(gaze.vec3("o")?, gaze.vec3("d")?).map_err(|e| err(line, format!("gaze.d: {e}")))?;
    let ext = hand.array::<4>("ext")?;
    let gap = hand.f64("gap")?;
    if ext.iter().any(|e| !e.is_finite()) || !gap.is_finite() {
        return Err(err(line, "hand: non-finite value"));
    }
    Ok(TrackingFrame {
        t,
        head: Pose::new(head.vec3("p")?, head.orientation("q")?),
        gaze: ray,
        gaze_valid: gaze.bool("valid")?,
        hand: HandSample { palm: Pose::new(hand.vec3("p")?, hand.orientation("q")?), finger_extension: ext, pinch_gap: gap },
        hand_valid: hand.bool("valid")?,
    })
}

/// Parses a trace, requiring the header first and strictly increasing
/// timestamps. Blank lines are not allowed. Line numbers count from 1.
pub fn parse_trace(text: &str) -> Result<Trace, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, first) = lines.next().ok_or_else(|| err(1, "missing trace header"))?;
    let header = parse_header(&parse_line(first, 1)?, 1)?;
    let mut frames: Vec<TrackingFrame> = Vec::new();
    for (line, text) in lines {
        let f = parse_frame(&parse_line(text, line)?, line, &[])?;
        if let Some(prev) = frames.last() {
            if f.t <= prev.t {
                return Err(err(line, format!("t {} does not increase past {}", fmt9(f.t), fmt9(prev.t))));
            }
        }
        frames.push(f);
    }
    Ok(Trace { header, frames })
}

fn opt(s: &Option<String>) -> Value {
    s.as_ref().map_or(Value::Null, |s| Value::String(s.clone()))
}

fn status_str(s: PlayStatus) -> &'static str {
    match s {
        PlayStatus::Stopped => "Stopped",
        PlayStatus::Playing => "Playing",
        PlayStatus::Paused => "Paused",
    }
}

/// Event fields without `t` and `event`.
pub fn event_fields(e: &LogEvent) -> Map<String, Value> {
    let v = match e {
        LogEvent::Ui(k) => match k {
            UiEventKind::UiSummoned | UiEventKind::UiDismissed => json!({}),
            UiEventKind::HoverChanged { from, to } => json!({"from": opt(from), "to": opt(to)}),
            UiEventKind::Selected { id } => json!({"id": id}),
            UiEventKind::DragStarted { target } => json!({"target": opt(target)}),
            UiEventKind::DragUpdated { delta } => json!({"delta": arr(&delta.to_array())}),
            UiEventKind::DragEnded { committed } => json!({"committed": committed}),
        },
        LogEvent::App(a) => match a {
            AppEvent::AppOpened { app } => json!({"app": app.as_str()}),
            AppEvent::FrameChanged { frame } => json!({"frame": frame.as_str()}),
            AppEvent::Playback { track, status } => json!({"track": opt(track), "status": status_str(*status)}),
            AppEvent::DetailOpened { app, item } => json!({"app": app, "item": item}),
            AppEvent::DetailClosed { app } => json!({"app": app}),
            AppEvent::NotificationExpanded { id } => json!({"id": id}),
            AppEvent::NotificationResolved { id, action } => json!({"id": id, "action": action.as_str()}),
            AppEvent::GalleryLayerChanged { layer, album, image } => {
                json!({"layer": layer, "album": opt(album), "image": opt(image)})
            }
            AppEvent::MapSettled { center, scale } => json!({"center": arr(center), "scale": num(*scale)}),
        },
    };
    match v {
        Value::Object(m) => m,
        _ => unreachable!("event fields are objects"),
    }
}

pub fn entry_to_json(e: &LogEntry) -> Value {
    let mut m = Map::new();
    m.insert("t".into(), num(e.t));
    m.insert("event".into(), Value::String(e.event.name().into()));
    m.extend(event_fields(&e.event));
    Value::Object(m)
}

pub fn serialize_log(entries: &[LogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&entry_to_json(e).to_string());
        out.push('\n');
    }
    out
}

fn parse_event(f: &Fields<'_>) -> Result<LogEvent, ParseError> {
    let name = f.str("event")?;
    let line = f.line;
    let keys = |ks: &[&str]| {
        let mut all = vec!["t", "event"];
        all.extend_from_slice(ks);
        f.only(&all)
    };
    let pick = |k: &str, options: &[&'static str]| -> Result<&'static str, ParseError> {
        let s = f.str(k)?;
        options.iter().copied().find(|o| *o == s).ok_or_else(|| err(line, format!("{k}: unknown value {s}")))
    };
    let ev = match name {
        "UiSummoned" => {
            keys(&[])?;
            LogEvent::Ui(UiEventKind::UiSummoned)
        }
        "UiDismissed" => {
            keys(&[])?;
            LogEvent::Ui(UiEventKind::UiDismissed)
        }
        "HoverChanged" => {
            keys(&["from", "to"])?;
            LogEvent::Ui(UiEventKind::HoverChanged { from: f.opt_str("from")?, to: f.opt_str("to")? })
        }
        "Selected" => {
            keys(&["id"])?;
            LogEvent::Ui(UiEventKind::Selected { id: f.str("id")?.to_string() })
        }
        "DragStarted" => {
            keys(&["target"])?;
            LogEvent::Ui(UiEventKind::DragStarted { target: f.opt_str("target")? })
        }
        "DragUpdated" => {
            keys(&["delta"])?;
            LogEvent::Ui(UiEventKind::DragUpdated { delta: f.vec3("delta")? })
        }
        "DragEnded" => {
            keys(&["committed"])?;
            LogEvent::Ui(UiEventKind::DragEnded { committed: f.bool("committed")? })
        }
        "AppOpened" => {
            keys(&["app"])?;
            let name = f.str("app")?;
            let app = std::iter::once(AppId::Home)
                .chain(AppId::LAUNCHABLE)
                .find(|a| a.as_str() == name)
                .ok_or_else(|| err(line, format!("app: unknown value {name}")))?;
            LogEvent::App(AppEvent::AppOpened { app })
        }
        "FrameChanged" => {
            keys(&["frame"])?;
            let name = f.str("frame")?;
            let frame = ReferenceFrame::ALL
                .into_iter()
                .find(|r| r.as_str() == name)
                .ok_or_else(|| err(line, format!("frame: unknown value {name}")))?;
            LogEvent::App(AppEvent::FrameChanged { frame })
        }
        "Playback" => {
            keys(&["track", "status"])?;
            let status = match pick("status", &["Stopped", "Playing", "Paused"])? {
                "Stopped" => PlayStatus::Stopped,
                "Playing" => PlayStatus::Playing,
                _ => PlayStatus::Paused,
            };
            LogEvent::App(AppEvent::Playback { track: f.opt_str("track")?, status })
        }
        "DetailOpened" => {
            keys(&["app", "item"])?;
            LogEvent::App(AppEvent::DetailOpened { app: f.str("app")?.into(), item: f.str("item")?.into() })
        }
        "DetailClosed" => {
            keys(&["app"])?;
            LogEvent::App(AppEvent::DetailClosed { app: f.str("app")?.into() })
        }
        "NotificationExpanded" => {
            keys(&["id"])?;
            LogEvent::App(AppEvent::NotificationExpanded { id: f.str("id")?.into() })
        }
        "NotificationResolved" => {
            keys(&["id", "action"])?;
            let action = match pick("action", &["check", "postpone", "delete"])? {
                "check" => NotificationAction::Check,
                "postpone" => NotificationAction::Postpone,
                _ => NotificationAction::Delete,
            };
            LogEvent::App(AppEvent::NotificationResolved { id: f.str("id")?.into(), action })
        }
        "GalleryLayerChanged" => {
            keys(&["layer", "album", "image"])?;
            LogEvent::App(AppEvent::GalleryLayerChanged {
                layer: f.u64("layer")? as usize,
                album: f.opt_str("album")?,
                image: f.opt_str("image")?,
            })
        }
        "MapSettled" => {
            keys(&["center", "scale"])?;
            LogEvent::App(AppEvent::MapSettled { center: f.array::<2>("center")?, scale: f.f64("scale")? })
        }
        other => return Err(err(line, format!("unknown event {other}"))),
    };
    Ok(ev)
}

pub fn parse_log(text: &str) -> Result<Vec<LogEntry>, ParseError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let v = parse_line(l, line)?;
        let f = Fields::new(&v, line, "")?;
        out.push(LogEntry { t: f.f64("t")?, event: parse_event(&f)? });
    }
    Ok(out)
}
