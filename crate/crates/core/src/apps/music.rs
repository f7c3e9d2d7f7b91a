use serde::{Deserialize, Serialize};

use super::layout::{grid_cell, split_v, MAIN};
use super::AppEvent;
use crate::targeting::{Element, ElementKind};

pub const PLAY: &str = "music.play";
pub const NEXT: &str = "music.next";
const SONG_PREFIX: &str = "music.song.";

const TITLES: [&str; 12] = [
    "Morning Tide",
    "Paper Lanterns",
    "Glass Harbor",
    "Northbound",
    "Slow Orbit",
    "Copper Fields",
    "Night Market",
    "Lowlands",
    "Signal Fire",
    "Velvet Static",
    "Open Water",
    "Last Train Home",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlayStatus {
    Stopped,
    Playing,
    Paused,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MusicState {
    pub tracks: Vec<String>,
    pub now_playing: Option<usize>,
    pub status: PlayStatus,
}

impl Default for MusicState {
    fn default() -> Self {
        Self { tracks: TITLES.iter().map(|s| s.to_string()).collect(), now_playing: None, status: PlayStatus::Stopped }
    }
}

/// Element id of the track at `index` (ids count from 1).
pub fn song_id(index: usize) -> String {
    format!("{SONG_PREFIX}{}", index + 1)
}

fn parse_song(id: &str) -> Option<usize> {
    id.strip_prefix(SONG_PREFIX)?.parse::<usize>().ok()?.checked_sub(1)
}

impl MusicState {
    pub fn elements(&self) -> Vec<Element> {
        let (songs, controls) = split_v(MAIN, 0.66);
        let play_label = if self.status == PlayStatus::Playing { "Pause" } else { "Play" };
        let mut out = vec![
            Element::new(PLAY, grid_cell(controls, 2, 1, 0, 0, 0.01), ElementKind::Button, play_label),
            Element::new(NEXT, grid_cell(controls, 2, 1, 1, 0, 0.01), ElementKind::Button, "Next"),
        ];
        for (i, title) in self.tracks.iter().enumerate() {
            let rect = grid_cell(songs, 3, 4, i % 3, i / 3, 0.008);
            out.push(Element::new(song_id(i), rect, ElementKind::ListItem, title.as_str()));
        }
        out
    }

    fn playback_event(&self) -> AppEvent {
        AppEvent::Playback {
            track: self.now_playing.map(song_id),
            status: self.status,
        }
    }

    /// Returns `None` when `id` is not a music element.
    pub fn select(&mut self, id: &str) -> Option<Vec<AppEvent>> {
        if let Some(i) = parse_song(id) {
            if i >= self.tracks.len() {
                return None;
            }
            self.now_playing = Some(i);
            self.status = PlayStatus::Playing;
            return Some(vec![self.playback_event()]);
        }
        match id {
            PLAY => {
                if self.tracks.is_empty() {
                    return Some(Vec::new());
                }
                self.status = match self.status {
                    PlayStatus::Playing => PlayStatus::Paused,
                    _ => PlayStatus::Playing,
                };
                self.now_playing.get_or_insert(0);
                Some(vec![self.playback_event()])
            }
            NEXT => {
                if self.tracks.is_empty() {
                    return Some(Vec::new());
                }
                let n = self.tracks.len();
                self.now_playing = Some(self.now_playing.map_or(0, |i| (i + 1) % n));
                Some(vec![self.playback_event()])
            }
            _ => None,
        }
    }
}
