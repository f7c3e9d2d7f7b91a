//! Starts the session service on a free port and streams a bundled trace
//! through it, printing events as they arrive.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpStream;
use std::thread;

use gazepinch::harness::codec::frame_to_json;
use gazepinch::harness::parse_trace;
use gazepinch::service;
use serde_json::{json, Value};

fn main() -> anyhow::Result<()> {
    let listener = service::bind(("127.0.0.1", 0))?;
    let addr = listener.local_addr()?;
    thread::spawn(move || service::run(listener));

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/music-quick-play-42.trace.jsonl"))?;
    let trace = parse_trace(&text)?;
    let stream = TcpStream::connect(addr)?;
    let mut w = stream.try_clone()?;
    thread::spawn(move || -> std::io::Result<()> {
        writeln!(w, "{}", json!({"type": "hello", "version": service::PROTOCOL_VERSION}))?;
        for f in &trace.frames {
            let mut v = frame_to_json(f);
            v["type"] = json!("frame");
            writeln!(w, "{v}")?;
        }
        w.shutdown(std::net::Shutdown::Write)
    });

    let mut states = 0;
    let mut last = Value::Null;
    for line in BufReader::new(stream).lines() {
        let msg: Value = serde_json::from_str(&line?)?;
        match msg["type"].as_str() {
            Some("event") => println!("{msg}"),
            Some("state") => {
                states += 1;
                last = msg;
            }
            _ => println!("server: {msg}"),
        }
    }
    println!("{states} state messages; final fsm {} app {}", last["fsm"], last["view_model"]["app"]);
    Ok(())
}
