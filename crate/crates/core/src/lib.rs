//! Engine for a palm-summoned, gaze-and-pinch driven hand menu.
//!
//! Per frame, tracking input (head pose, gaze ray, one hand) goes through
//! [`input`] conditioning, the panel is placed by [`reference_frame`], the
//! gaze is hit-tested with [`targeting`], [`fsm`] turns it all into
//! interaction events and [`apps`] applies them. [`engine::Engine`] ties the
//! steps together; [`harness`] records, replays and synthesizes traces and
//! [`service`] exposes sessions over TCP.

pub mod apps;
pub mod config;
pub mod engine;
pub mod fsm;
pub mod geometry;
pub mod harness;
pub mod input;
pub mod navigation;
pub mod reference_frame;
pub mod service;
pub mod targeting;

pub use config::Config;
pub use engine::{Engine, LogEntry, LogEvent, Snapshot};
pub use fsm::{UiEvent, UiEventKind};
pub use input::TrackingFrame;
pub use reference_frame::ReferenceFrame;
