//! Traces, deterministic replay, synthetic scenarios and task scoring.

pub mod codec;
pub mod replay;
pub mod scenario;
pub mod task;

pub use codec::{parse_log, parse_trace, serialize_log, serialize_trace, ParseError, Trace, TraceHeader};
pub use replay::{replay, ReplayOutput};
pub use scenario::{generate_scenario, generate_scenario_with, ScenarioOptions};
pub use task::{score, Goal, Metrics, TaskSpec, SCENARIOS};
