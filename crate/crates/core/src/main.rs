use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use gazepinch::harness::{generate_scenario, parse_trace, replay, score, serialize_log, serialize_trace, TaskSpec};
use gazepinch::{service, Config};

#[derive(Parser)]
#[command(name = "gazepinch", version, about = "Replay, synthesize and serve hand-menu sessions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a trace and write its event log
    Replay {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Scenario whose goal must be reached (targets come from the trace seed)
        #[arg(long)]
        expect_goal: Option<String>,
    },
    /// Generate a synthetic scenario trace
    Scenario {
        #[arg(long)]
        name: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve live sessions over TCP on localhost
    Serve {
        #[arg(long)]
        port: u16,
    },
    /// Check that a trace parses
    Validate {
        #[arg(long)]
        trace: PathBuf,
    },
}

const PARSE_ERROR: u8 = 2;
const GOAL_FAILED: u8 = 3;

fn load_config(path: Option<&Path>) -> Result<Config, ExitCode> {
    let Some(path) = path else { return Ok(Config::default()) };
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::FAILURE
    })?;
    Config::from_json(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(PARSE_ERROR)
    })
}

fn read_trace(path: &Path) -> Result<gazepinch::harness::Trace, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::FAILURE
    })?;
    parse_trace(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(PARSE_ERROR)
    })
}

fn run_replay(trace: &Path, config: Option<&Path>, out: &Path, expect_goal: Option<&str>) -> Result<ExitCode, ExitCode> {
    let config = load_config(config)?;
    let trace = read_trace(trace)?;
    if trace.header.config != config.digest() {
        log::warn!("trace was recorded with config {} but replaying with {}", trace.header.config, config.digest());
    }
    let output = replay(&trace, &config).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })?;
    fs::write(out, serialize_log(&output.log)).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", out.display());
        ExitCode::FAILURE
    })?;
    let Some(goal) = expect_goal else {
        println!("{}", serde_json::json!({"frames": trace.frames.len(), "events": output.log.len()}));
        return Ok(ExitCode::SUCCESS);
    };
    let task = TaskSpec::for_scenario(goal, trace.header.seed).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })?;
    let metrics = score(&output.log, &task);
    println!("{}", serde_json::to_string(&metrics).expect("metrics serialize"));
    Ok(if metrics.completion { ExitCode::SUCCESS } else { ExitCode::from(GOAL_FAILED) })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    Ok(match cli.command {
        Command::Replay { trace, config, out, expect_goal } => {
            run_replay(&trace, config.as_deref(), &out, expect_goal.as_deref()).unwrap_or_else(|code| code)
        }
        Command::Scenario { name, seed, out } => match generate_scenario(&name, seed) {
            Ok(trace) => {
                fs::write(&out, serialize_trace(&trace)).with_context(|| format!("writing {}", out.display()))?;
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Command::Serve { port } => {
            service::serve(port).context("serving sessions")?;
            ExitCode::SUCCESS
        }
        Command::Validate { trace } => match read_trace(&trace) {
            Ok(t) => {
                println!("ok: {} frames", t.frames.len());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
