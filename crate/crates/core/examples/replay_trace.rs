//! Replays a trace file and prints a per-event summary.
//!
//! `cargo run --example replay_trace -- crates/core/data/map-find-marker-42.trace.jsonl`

use std::collections::BTreeMap;

use gazepinch::harness::{parse_trace, replay};
use gazepinch::Config;

fn main() -> anyhow::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/gallery-find-image-42.trace.jsonl").into());
    let trace = parse_trace(&std::fs::read_to_string(&path)?)?;
    let out = replay(&trace, &Config::default())?;
    let mut counts = BTreeMap::new();
    for e in &out.log {
        *counts.entry(e.event.name()).or_insert(0) += 1;
    }
    println!("{} frames, {:.2} s, seed {}", trace.frames.len(), trace.frames.last().map_or(0.0, |f| f.t), trace.header.seed);
    for (name, n) in counts {
        println!("{name:<22} {n}");
    }
    println!("ended in {:?}", out.session.active);
    Ok(())
}
