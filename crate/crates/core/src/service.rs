//! Line-delimited JSON session protocol over TCP, one engine per
//! connection.
//!
//! Client: `{"type":"hello","version":1,"config":{...}}`, then
//! `{"type":"frame", ...frame fields...}` per tracking frame.
//! Server: one `state` message in reply to the hello and after each frame,
//! preceded by that frame's `event` messages. Any protocol violation gets an
//! `error` message and the connection is closed.

use std::io::{self, BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream, ToSocketAddrs};
use std::thread;

use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::engine::{Engine, LogEntry, Snapshot};
use crate::harness::codec::{entry_to_json, num, parse_frame};

pub const PROTOCOL_VERSION: u64 = 1;

fn pose_json(p: &crate::geometry::Pose) -> Value {
    let a = |xs: &[f64]| Value::Array(xs.iter().copied().map(num).collect());
    json!({"p": a(&p.position.to_array()), "q": a(&p.orientation.to_wxyz())})
}

pub fn state_message(s: &Snapshot) -> Value {
    json!({
        "type": "state",
        "t": s.t.map_or(Value::Null, num),
        "fsm": s.fsm,
        "ui_pose": s.ui_pose.as_ref().map_or(Value::Null, pose_json),
        "reference_frame": s.reference_frame.as_str(),
        "view_model": serde_json::to_value(&s.view_model).expect("view model serializes"),
        "hover": s.hover,
        "summon_progress": num(s.summon_progress),
    })
}

pub fn event_message(e: &LogEntry) -> Value {
    let mut m = Map::new();
    m.insert("type".into(), Value::String("event".into()));
    if let Value::Object(fields) = entry_to_json(e) {
        m.extend(fields);
    }
    Value::Object(m)
}

fn error_message(message: &str) -> Value {
    json!({"type": "error", "message": message})
}

fn send(w: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(w, "{v}")?;
    w.flush()
}

fn parse_hello(v: &Value) -> Result<Config, String> {
    let obj = v.as_object().ok_or("hello must be an object")?;
    if let Some(k) = obj.keys().find(|k| !["type", "version", "config"].contains(&k.as_str())) {
        return Err(format!("unknown key {k} in hello"));
    }
    match obj.get("version").and_then(Value::as_u64) {
        Some(PROTOCOL_VERSION) => {}
        Some(other) => return Err(format!("unsupported protocol version {other}")),
        None => return Err("hello needs a numeric version".into()),
    }
    match obj.get("config") {
        None | Some(Value::Null) => Ok(Config::default()),
        Some(c) => Config::from_json(&c.to_string()).map_err(|e| e.to_string()),
    }
}

/// Runs one session until the client disconnects or breaks the protocol.
pub fn serve_connection(reader: impl BufRead, mut writer: impl Write) -> io::Result<()> {
    let mut engine: Option<Engine> = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let outcome = handle_line(&mut engine, &line, i + 1);
        match outcome {
            Ok(messages) => {
                for m in &messages {
                    writeln!(writer, "{m}")?;
                }
                writer.flush()?;
            }
            Err(message) => {
                log::warn!("closing session: {message}");
                send(&mut writer, &error_message(&message))?;
                return Ok(());
            }
        }
    }
    Ok(())
}

fn handle_line(engine: &mut Option<Engine>, line: &str, line_no: usize) -> Result<Vec<Value>, String> {
    let v: Value = serde_json::from_str(line).map_err(|e| format!("line {line_no}: invalid JSON: {e}"))?;
    match v.get("type").and_then(Value::as_str) {
        Some("hello") => {
            if engine.is_some() {
                return Err(format!("line {line_no}: duplicate hello"));
            }
            let e = Engine::new(parse_hello(&v).map_err(|m| format!("line {line_no}: {m}"))?);
            let state = state_message(&e.snapshot());
            *engine = Some(e);
            Ok(vec![state])
        }
        Some("frame") => {
            let e = engine.as_mut().ok_or_else(|| format!("line {line_no}: frame before hello"))?;
            let frame = parse_frame(&v, line_no, &["type"]).map_err(|err| err.to_string())?;
            let entries = e.process(&frame).map_err(|err| format!("line {line_no}: {err}"))?;
            let mut out: Vec<Value> = entries.iter().map(event_message).collect();
            out.push(state_message(&e.snapshot()));
            Ok(out)
        }
        Some(other) => Err(format!("line {line_no}: unknown message type {other}")),
        None => Err(format!("line {line_no}: message without a type")),
    }
}

pub fn bind(addr: impl ToSocketAddrs) -> io::Result<TcpListener> {
    TcpListener::bind(addr)
}

/// Accepts connections forever, one thread per session.
pub fn run(listener: TcpListener) -> io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        thread::spawn(move || {
            if let Err(e) = handle_stream(stream) {
                log::warn!("session ended with I/O error: {e}");
            }
        });
    }
    Ok(())
}

fn handle_stream(stream: TcpStream) -> io::Result<()> {
    let peer = stream.peer_addr()?;
    log::info!("session from {peer}");
    let reader = BufReader::new(stream.try_clone()?);
    serve_connection(reader, stream)
}

pub fn serve(port: u16) -> io::Result<()> {
    let listener = bind(("127.0.0.1", port))?;
    log::info!("listening on {}", listener.local_addr()?);
    run(listener)
}
