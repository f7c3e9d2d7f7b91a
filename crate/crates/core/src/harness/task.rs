//! Study-style tasks, their goal predicates, and metrics over event logs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apps::gallery::{album_id, image_id, ALBUMS, IMAGES_PER_ALBUM};
use crate::apps::map::{MapState, MARKER_RADIUS};
use crate::apps::music::song_id;
use crate::apps::AppEvent;
use crate::engine::{LogEntry, LogEvent};
use crate::fsm::UiEventKind;
use crate::navigation::{visible_rect, MapParams, MapView};

pub const SCENARIOS: [&str; 5] = ["music-quick-play", "favorites-find-file", "gallery-find-image", "map-find-marker", "fuzz-random"];

/// Scale the map must reach (or go below) for a marker search to count.
pub const MAP_GOAL_SCALE: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Goal {
    /// A `Selected` event for this element.
    Selected { id: String },
    /// A file detail view opened on this item.
    DetailOpened { app: String, item: String },
    /// The gallery reached the single-image layer on this image.
    GalleryImage { image: String },
    /// A settled map view showing the whole marker at or below `max_scale`.
    MapMarker { marker: String, position: [f64; 2], max_scale: f64, aspect: f64 },
    /// No goal; the task never completes.
    None,
}

impl Goal {
    fn reached_by(&self, e: &LogEvent) -> bool {
        match (self, e) {
            (Goal::Selected { id }, LogEvent::Ui(UiEventKind::Selected { id: got })) => id == got,
            (Goal::DetailOpened { app, item }, LogEvent::App(AppEvent::DetailOpened { app: a, item: i })) => {
                app == a && item == i
            }
            (Goal::GalleryImage { image }, LogEvent::App(AppEvent::GalleryLayerChanged { layer: 2, image: Some(i), .. })) => {
                image == i
            }
            (Goal::MapMarker { position, max_scale, aspect, .. }, LogEvent::App(AppEvent::MapSettled { center, scale })) => {
                let [x0, y0, x1, y1] = visible_rect(&MapView { center: *center, scale: *scale }, *aspect);
                let [x, y] = *position;
                *scale <= *max_scale
                    && x - MARKER_RADIUS >= x0
                    && x + MARKER_RADIUS <= x1
                    && y - MARKER_RADIUS >= y0
                    && y + MARKER_RADIUS <= y1
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskSpec {
    pub scenario: String,
    pub goal: Goal,
    /// Element ids a correct run selects; any other selection is an error.
    pub path: Vec<String>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("unknown scenario {0}")]
pub struct UnknownScenario(pub String);

/// Random source for target choice, independent of the motion noise.
pub fn target_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

impl TaskSpec {
    pub fn for_scenario(name: &str, seed: u64) -> Result<Self, UnknownScenario> {
        let mut rng = target_rng(seed);
        let spec = match name {
            "music-quick-play" => {
                let track = song_id(rng.random_range(0..12));
                Self { scenario: name.into(), goal: Goal::Selected { id: track.clone() }, path: vec!["home.music".into(), track] }
            }
            "favorites-find-file" => {
                let item = format!("favorites.file.{}", rng.random_range(1..=8));
                Self {
                    scenario: name.into(),
                    goal: Goal::DetailOpened { app: "favorites".into(), item: item.clone() },
                    path: vec!["home.favorites".into(), item, "favorites.back".into()],
                }
            }
            "gallery-find-image" => {
                let album = rng.random_range(0..ALBUMS);
                let image = rng.random_range(0..IMAGES_PER_ALBUM);
                Self {
                    scenario: name.into(),
                    goal: Goal::GalleryImage { image: image_id(album, image) },
                    // Albums and images are reached by depth drags; selecting
                    // them on the way is also on path.
                    path: vec!["home.gallery".into(), album_id(album), image_id(album, image)],
                }
            }
            "map-find-marker" => {
                let markers = MapState::default().markers;
                let m = &markers[rng.random_range(0..markers.len())];
                Self {
                    scenario: name.into(),
                    goal: Goal::MapMarker {
                        marker: m.id.clone(),
                        position: m.position,
                        max_scale: MAP_GOAL_SCALE,
                        aspect: MapParams::default().aspect,
                    },
                    path: vec!["home.map".into()],
                }
            }
            "fuzz-random" => Self { scenario: name.into(), goal: Goal::None, path: Vec::new() },
            other => return Err(UnknownScenario(other.to_string())),
        };
        Ok(spec)
    }

    /// The album/image a gallery task is after, as zero-based indices.
    pub fn gallery_target(&self) -> Option<(usize, usize)> {
        match &self.goal {
            Goal::GalleryImage { image } => {
                let g: usize = image.strip_prefix("gallery.image.")?.parse().ok()?;
                Some(((g - 1) / IMAGES_PER_ALBUM, (g - 1) % IMAGES_PER_ALBUM))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub completion: bool,
    /// Goal time minus the first `UiSummoned`; absent when not completed.
    pub time_to_complete: Option<f64>,
    /// Goal time minus the latest `UiSummoned` before it.
    pub time_from_summon: Option<f64>,
    pub selection_count: usize,
    pub erroneous_selection_count: usize,
    /// Sum of drag update lengths in meters.
    pub total_drag_path: f64,
}

pub fn score(log: &[LogEntry], task: &TaskSpec) -> Metrics {
    let mut first_summon = None;
    let mut last_summon = None;
    let mut goal_at = None;
    let mut selections = 0;
    let mut wrong = 0;
    let mut drag_path = 0.0;
    for e in log {
        match &e.event {
            LogEvent::Ui(UiEventKind::UiSummoned) if goal_at.is_none() => {
                first_summon.get_or_insert(e.t);
                last_summon = Some(e.t);
            }
            LogEvent::Ui(UiEventKind::Selected { id }) => {
                selections += 1;
                if !task.path.contains(id) {
                    wrong += 1;
                }
            }
            LogEvent::Ui(UiEventKind::DragUpdated { delta }) => drag_path += delta.length(),
            _ => {}
        }
        if goal_at.is_none() && task.goal.reached_by(&e.event) {
            goal_at = Some(e.t);
        }
    }
    let since = |start: Option<f64>| goal_at.zip(start).map(|(g, s)| g - s);
    Metrics {
        completion: goal_at.is_some(),
        time_to_complete: since(first_summon),
        time_from_summon: since(last_summon),
        selection_count: selections,
        erroneous_selection_count: wrong,
        total_drag_path: drag_path,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec3;

    fn ui(t: f64, k: UiEventKind) -> LogEntry {
        LogEntry { t, event: LogEvent::Ui(k) }
    }

    fn sel(t: f64, id: &str) -> LogEntry {
        ui(t, UiEventKind::Selected { id: id.into() })
    }

    fn music_task(track: &str) -> TaskSpec {
        TaskSpec {
            scenario: "music-quick-play".into(),
            goal: Goal::Selected { id: track.into() },
            path: vec!["home.music".into(), track.into()],
        }
    }

    #[test]
    fn goal_selection_completes() {
        let log = vec![ui(1.0, UiEventKind::UiSummoned), sel(1.5, "home.music"), sel(2.25, "music.song.4")];
        let m = score(&log, &music_task("music.song.4"));
        assert!(m.completion);
        assert_eq!(m.time_to_complete, Some(1.25));
        assert_eq!((m.selection_count, m.erroneous_selection_count), (2, 0));
    }

    #[test]
    fn missing_goal_leaves_time_undefined() {
        let log = vec![ui(1.0, UiEventKind::UiSummoned), sel(1.5, "music.song.3")];
        let m = score(&log, &music_task("music.song.4"));
        assert!(!m.completion);
        assert_eq!(m.time_to_complete, None);
        assert_eq!(m.time_from_summon, None);
    }

    #[test]
    fn counts_two_wrong_selections() {
        // Hand count: music.song.2 and top.frame are off path.
        let log = vec![
            ui(0.0, UiEventKind::UiSummoned),
            sel(0.5, "home.music"),
            sel(0.9, "music.song.2"),
            sel(1.3, "top.frame"),
            ui(1.4, UiEventKind::UiDismissed),
            ui(2.0, UiEventKind::UiSummoned),
            sel(2.5, "music.song.4"),
        ];
        let m = score(&log, &music_task("music.song.4"));
        assert_eq!(m.erroneous_selection_count, 2);
        assert_eq!(m.selection_count, 4);
        assert_eq!(m.time_to_complete, Some(2.5));
        assert_eq!(m.time_from_summon, Some(0.5));
    }

    #[test]
    fn drag_path_sums_lengths() {
        let log = vec![
            ui(0.0, UiEventKind::DragUpdated { delta: Vec3::new(0.03, 0.04, 0.0) }),
            ui(0.1, UiEventKind::DragUpdated { delta: Vec3::new(0.0, 0.0, -0.01) }),
        ];
        let m = score(&log, &TaskSpec::for_scenario("fuzz-random", 0).unwrap());
        assert!((m.total_drag_path - 0.06).abs() < 1e-12);
    }

    #[test]
    fn map_goal_needs_scale_and_visibility() {
        let task = TaskSpec::for_scenario("map-find-marker", 3).unwrap();
        let Goal::MapMarker { position, .. } = task.goal.clone() else { panic!() };
        let settle = |center, scale| vec![LogEntry { t: 1.0, event: LogEvent::App(AppEvent::MapSettled { center, scale }) }];
        assert!(score(&settle(position, 0.25), &task).completion);
        assert!(!score(&settle(position, 0.5), &task).completion);
        let far = [if position[0] < 0.6 { 0.9 } else { 0.1 }, position[1]];
        assert!(!score(&settle(far, 0.25), &task).completion);
    }

    #[test]
    fn targets_are_seeded() {
        assert_eq!(TaskSpec::for_scenario("gallery-find-image", 9), TaskSpec::for_scenario("gallery-find-image", 9));
        assert!(TaskSpec::for_scenario("nope", 1).is_err());
        let distinct: std::collections::HashSet<_> =
            (0..50).map(|s| format!("{:?}", TaskSpec::for_scenario("music-quick-play", s).unwrap().goal)).collect();
        assert!(distinct.len() > 5);
    }
}
