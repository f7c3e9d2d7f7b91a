use crate::apps::SessionState;
use crate::config::Config;
use crate::engine::{Engine, EngineError, LogEntry};

use super::codec::Trace;

#[derive(Debug, Clone)]
pub struct ReplayOutput {
    pub log: Vec<LogEntry>,
    pub session: SessionState,
}

/// Runs every frame through a fresh engine.
pub fn replay(trace: &Trace, config: &Config) -> Result<ReplayOutput, EngineError> {
    let mut engine = Engine::new(config.clone());
    let mut log = Vec::new();
    for f in &trace.frames {
        log.extend(engine.process(f)?);
    }
    Ok(ReplayOutput { log, session: engine.session().clone() })
}
