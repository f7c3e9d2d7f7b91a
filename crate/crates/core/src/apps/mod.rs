//! Demo applications behind the menu, and routing of interaction events to
//! whichever one is open.

pub mod files;
pub mod gallery;
pub mod layout;
pub mod map;
pub mod music;
pub mod notifications;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::fsm::UiEventKind;
use crate::geometry::{PanelExtent, PanelPoint, Vec3};
use crate::navigation::{DepthNavState, MapParams, MapView, PeepholeMode, ScrollState};
use crate::reference_frame::{toggle_reference_frame, ReferenceFrame};
use crate::targeting::{Element, ElementKind};

use files::FileBrowserState;
use gallery::GalleryState;
use layout::{grid_cell, top_bar, FRAME_BUTTON, HOME_BUTTON, MAIN};
use map::MapState;
use music::{MusicState, PlayStatus};
use notifications::{NotificationAction, NotificationsState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AppId {
    Home,
    Music,
    Notifications,
    Downloads,
    Favorites,
    Gallery,
    Map,
}

impl AppId {
    /// Apps reachable from the home grid, in grid order.
    pub const LAUNCHABLE: [AppId; 6] =
        [Self::Music, Self::Notifications, Self::Downloads, Self::Favorites, Self::Gallery, Self::Map];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Home => "home",
            Self::Music => "music",
            Self::Notifications => "notifications",
            Self::Downloads => "downloads",
            Self::Favorites => "favorites",
            Self::Gallery => "gallery",
            Self::Map => "map",
        }
    }

    pub fn home_icon(self) -> String {
        format!("home.{}", self.as_str())
    }

    fn from_home_icon(id: &str) -> Option<Self> {
        let name = id.strip_prefix("home.")?;
        Self::LAUNCHABLE.into_iter().find(|a| a.as_str() == name)
    }

    /// Which drag axes (x, y, z) the app responds to.
    pub fn drag_axes(self, shortcuts: bool) -> [bool; 3] {
        match self {
            Self::Map => [true, true, true],
            Self::Downloads => [true, false, false],
            Self::Gallery => [false, false, true],
            Self::Notifications => [shortcuts, true, false],
            Self::Home | Self::Music | Self::Favorites => [false, false, false],
        }
    }
}

/// App-level consequences of interaction events, logged next to them.
#[derive(Debug, Clone, PartialEq)]
pub enum AppEvent {
    AppOpened { app: AppId },
    FrameChanged { frame: ReferenceFrame },
    Playback { track: Option<String>, status: PlayStatus },
    DetailOpened { app: String, item: String },
    DetailClosed { app: String },
    NotificationExpanded { id: String },
    NotificationResolved { id: String, action: NotificationAction },
    GalleryLayerChanged { layer: usize, album: Option<String>, image: Option<String> },
    MapSettled { center: [f64; 2], scale: f64 },
}

impl AppEvent {
    pub fn name(&self) -> &'static str {
        match self {
            Self::AppOpened { .. } => "AppOpened",
            Self::FrameChanged { .. } => "FrameChanged",
            Self::Playback { .. } => "Playback",
            Self::DetailOpened { .. } => "DetailOpened",
            Self::DetailClosed { .. } => "DetailClosed",
            Self::NotificationExpanded { .. } => "NotificationExpanded",
            Self::NotificationResolved { .. } => "NotificationResolved",
            Self::GalleryLayerChanged { .. } => "GalleryLayerChanged",
            Self::MapSettled { .. } => "MapSettled",
        }
    }
}

/// Where the gaze is on the panel this frame.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GazeContext {
    pub point: Option<PanelPoint>,
    pub hover: Option<String>,
}

/// Per-frame parameters the apps need to interpret events.
#[derive(Debug, Clone, PartialEq)]
pub struct AppContext {
    pub mode: PeepholeMode,
    pub map: MapParams,
    pub layer_spacing: f64,
    pub shortcuts: bool,
    pub shortcut_threshold: f64,
    pub extent: PanelExtent,
    pub pan_gain: f64,
    pub gaze: GazeContext,
}

impl AppContext {
    pub fn new(config: &Config, frame: ReferenceFrame, gaze: GazeContext) -> Self {
        Self {
            mode: PeepholeMode::for_frame(frame),
            map: MapParams::from(config),
            layer_spacing: config.layer_spacing,
            shortcuts: config.notification_shortcuts,
            shortcut_threshold: config.shortcut_threshold,
            extent: config.panel_extent(),
            pan_gain: config.pan_gain,
            gaze,
        }
    }
}

impl Default for AppContext {
    fn default() -> Self {
        Self::new(&Config::default(), ReferenceFrame::OnHand, GazeContext::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppViewModel {
    pub app: AppId,
    pub elements: Vec<Element>,
    pub scroll: Option<ScrollState>,
    pub depth: Option<DepthNavState>,
    pub map: Option<MapView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub active: AppId,
    pub reference_frame: ReferenceFrame,
    pub music: MusicState,
    pub notifications: NotificationsState,
    pub downloads: FileBrowserState,
    pub favorites: FileBrowserState,
    pub gallery: GalleryState,
    pub map: MapState,
}

impl SessionState {
    pub fn new(frame: ReferenceFrame) -> Self {
        Self {
            active: AppId::Home,
            reference_frame: frame,
            music: MusicState::default(),
            notifications: NotificationsState::default(),
            downloads: FileBrowserState::downloads(),
            favorites: FileBrowserState::favorites(),
            gallery: GalleryState::default(),
            map: MapState::default(),
        }
    }

    fn home_elements() -> Vec<Element> {
        AppId::LAUNCHABLE
            .iter()
            .enumerate()
            .map(|(i, app)| {
                let rect = grid_cell(MAIN, 3, 2, i % 3, i / 3, 0.02);
                Element::new(app.home_icon(), rect, ElementKind::Button, app.as_str())
            })
            .collect()
    }

    /// Top bar first, then the active app's elements.
    pub fn elements(&self, ctx: &AppContext) -> Vec<Element> {
        let mut out = top_bar(self.reference_frame.as_str());
        out.extend(match self.active {
            AppId::Home => Self::home_elements(),
            AppId::Music => self.music.elements(),
            AppId::Notifications => self.notifications.elements(&ctx.extent),
            AppId::Downloads => self.downloads.elements(&ctx.extent),
            AppId::Favorites => self.favorites.elements(&ctx.extent),
            AppId::Gallery => self.gallery.elements(),
            AppId::Map => self.map.elements(&ctx.map),
        });
        out
    }

    pub fn view_model(&self, ctx: &AppContext) -> AppViewModel {
        AppViewModel {
            app: self.active,
            elements: self.elements(ctx),
            scroll: match self.active {
                AppId::Notifications => Some(self.notifications.scroll),
                AppId::Downloads => Some(self.downloads.scroll),
                _ => None,
            },
            depth: (self.active == AppId::Gallery).then_some(self.gallery.depth),
            map: (self.active == AppId::Map).then_some(self.map.view),
        }
    }

    fn select(&mut self, id: &str, ctx: &AppContext) -> Vec<AppEvent> {
        if id == HOME_BUTTON {
            if self.active == AppId::Home {
                return Vec::new();
            }
            self.active = AppId::Home;
            return vec![AppEvent::AppOpened { app: AppId::Home }];
        }
        if id == FRAME_BUTTON {
            self.reference_frame = toggle_reference_frame(self.reference_frame);
            return vec![AppEvent::FrameChanged { frame: self.reference_frame }];
        }
        let handled = match self.active {
            AppId::Home => AppId::from_home_icon(id).map(|app| {
                self.active = app;
                vec![AppEvent::AppOpened { app }]
            }),
            AppId::Music => self.music.select(id),
            AppId::Notifications => self.notifications.select(id, ctx),
            AppId::Downloads => self.downloads.select(id),
            AppId::Favorites => self.favorites.select(id),
            AppId::Gallery => self.gallery.select(id),
            AppId::Map => self.map.select(id),
        };
        handled.unwrap_or_else(|| {
            log::debug!("selection of unknown element {id} in {}", self.active.as_str());
            Vec::new()
        })
    }

    /// Applies one interaction event to the open app.
    pub fn handle(&mut self, event: &UiEventKind, ctx: &AppContext) -> Vec<AppEvent> {
        match event {
            UiEventKind::Selected { id } => self.select(id, ctx),
            UiEventKind::DragStarted { target } => {
                match self.active {
                    AppId::Notifications => self.notifications.drag_start(target.as_deref(), ctx),
                    AppId::Gallery => self.gallery.drag_start(),
                    _ => {}
                }
                Vec::new()
            }
            UiEventKind::DragUpdated { delta } => {
                let [ax, ay, az] = self.active.drag_axes(ctx.shortcuts);
                let masked = Vec3::new(
                    if ax { delta.x } else { 0.0 },
                    if ay { delta.y } else { 0.0 },
                    if az { delta.z } else { 0.0 },
                );
                match self.active {
                    AppId::Notifications => self.notifications.drag_update(masked, ctx),
                    AppId::Downloads => self.downloads.drag_update(masked, ctx),
                    AppId::Gallery => return self.gallery.drag_update(masked, ctx),
                    AppId::Map => self.map.drag_update(masked, ctx),
                    AppId::Home | AppId::Music | AppId::Favorites => {}
                }
                Vec::new()
            }
            UiEventKind::DragEnded { committed } => match self.active {
                AppId::Notifications => self.notifications.drag_end(*committed, ctx),
                AppId::Map => self.map.drag_end(),
                _ => Vec::new(),
            },
            UiEventKind::UiSummoned | UiEventKind::UiDismissed | UiEventKind::HoverChanged { .. } => Vec::new(),
        }
    }
}
