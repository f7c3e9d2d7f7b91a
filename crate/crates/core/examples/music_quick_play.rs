//! Synthesizes the quick-play task, replays it and scores the log.
//!
//! `cargo run --example music_quick_play -- 17` picks seed 17.

use gazepinch::harness::{generate_scenario, replay, score, serialize_log, TaskSpec};
use gazepinch::Config;

fn main() -> anyhow::Result<()> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(42);
    let name = "music-quick-play";
    let trace = generate_scenario(name, seed)?;
    let out = replay(&trace, &Config::default())?;
    print!("{}", serialize_log(&out.log));
    let task = TaskSpec::for_scenario(name, seed)?;
    println!("goal {:?}", task.goal);
    println!("{}", serde_json::to_string_pretty(&score(&out.log, &task))?);
    Ok(())
}
