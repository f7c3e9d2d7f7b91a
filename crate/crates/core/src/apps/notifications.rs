use serde::{Deserialize, Serialize};

use super::layout::{grid_cell, MAIN};
use super::{AppContext, AppEvent};
use crate::geometry::{PanelExtent, Vec3};
use crate::navigation::{scroll_update, ScrollState};
use crate::targeting::{Element, ElementKind, UvRect};

const PREFIX: &str = "notif.";
/// Row height in content meters.
const ROW_HEIGHT: f64 = 0.036;

const SEED_ITEMS: [(&str, &str, &str); 8] = [
    ("Mail", "Quarterly report", "Finance shared the Q3 numbers"),
    ("Calendar", "Standup in 10 min", "Room 4.12, bring the demo"),
    ("Chat", "Lena", "Are we still on for lunch?"),
    ("Build", "Pipeline green", "main passed all 412 checks"),
    ("Weather", "Rain later", "Showers expected after 16:00"),
    ("Delivery", "Parcel arriving", "Your package is out for delivery"),
    ("Chat", "Team channel", "3 new messages in #design"),
    ("System", "Update ready", "Restart to finish installing"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotificationAction {
    Check,
    Postpone,
    Delete,
}

impl NotificationAction {
    const ALL: [NotificationAction; 3] = [Self::Check, Self::Postpone, Self::Delete];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Check => "check",
            Self::Postpone => "postpone",
            Self::Delete => "delete",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Notification {
    pub id: String,
    pub app: String,
    pub title: String,
    pub body: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ShortcutDrag {
    target: String,
    net_x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NotificationsState {
    pub items: Vec<Notification>,
    pub expanded: Option<String>,
    pub scroll: ScrollState,
    shortcut: Option<ShortcutDrag>,
}

impl Default for NotificationsState {
    fn default() -> Self {
        let items = SEED_ITEMS
            .iter()
            .enumerate()
            .map(|(i, (app, title, body))| Notification {
                id: format!("n{}", i + 1),
                app: app.to_string(),
                title: title.to_string(),
                body: body.to_string(),
            })
            .collect();
        let mut s = Self { items, expanded: None, scroll: ScrollState::new([0.0; 2], [0.0; 2]), shortcut: None };
        s.refresh_bounds(&PanelExtent::new(0.30, 0.22).expect("extent"));
        s
    }
}

pub fn element_id(notification: &str) -> String {
    format!("{PREFIX}{notification}")
}

pub fn action_id(notification: &str, action: NotificationAction) -> String {
    format!("{PREFIX}{notification}.{}", action.as_str())
}

/// Notification id an element id belongs to, and the action if it is one
/// of the expanded context buttons.
fn parse(id: &str) -> Option<(&str, Option<NotificationAction>)> {
    let rest = id.strip_prefix(PREFIX)?;
    match rest.split_once('.') {
        Some((n, a)) => Some((n, Some(NotificationAction::parse(a)?))),
        None => Some((rest, None)),
    }
}

impl NotificationsState {
    fn viewport_height(extent: &PanelExtent) -> f64 {
        (MAIN.max_v - MAIN.min_v) * extent.height
    }

    fn refresh_bounds(&mut self, extent: &PanelExtent) {
        let overflow = (self.items.len() as f64 * ROW_HEIGHT - Self::viewport_height(extent)).max(0.0);
        self.scroll.min = [0.0, -overflow];
        self.scroll.max = [0.0, 0.0];
        self.scroll = self.scroll.clamped();
    }

    pub fn elements(&self, extent: &PanelExtent) -> Vec<Element> {
        let mut out = Vec::new();
        for (k, n) in self.items.iter().enumerate() {
            let top = -(k as f64) * ROW_HEIGHT;
            let v_top = MAIN.max_v + (top - self.scroll.offset[1]) / extent.height;
            let v_bot = v_top - ROW_HEIGHT / extent.height;
            let row = UvRect::new(MAIN.min_u, v_bot, MAIN.max_u, v_top);
            if self.expanded.as_deref() == Some(n.id.as_str()) {
                for (i, action) in NotificationAction::ALL.into_iter().enumerate() {
                    let cell = grid_cell(row, 3, 1, i, 0, 0.006);
                    if let Some(rect) = cell.intersect(&MAIN) {
                        out.push(Element::new(action_id(&n.id, action), rect, ElementKind::Button, action.as_str()));
                    }
                }
            } else if let Some(rect) = grid_cell(row, 1, 1, 0, 0, 0.006).intersect(&MAIN) {
                let label = format!("{}: {}", n.app, n.title);
                out.push(Element::new(element_id(&n.id), rect, ElementKind::ListItem, label));
            }
        }
        out
    }

    fn position(&self, id: &str) -> Option<usize> {
        self.items.iter().position(|n| n.id == id)
    }

    fn apply(&mut self, id: &str, action: NotificationAction, ctx: &AppContext) -> Vec<AppEvent> {
        let Some(pos) = self.position(id) else {
            return Vec::new();
        };
        let item = self.items.remove(pos);
        if action == NotificationAction::Postpone {
            self.items.push(item);
        }
        if self.expanded.as_deref() == Some(id) {
            self.expanded = None;
        }
        self.refresh_bounds(&ctx.extent);
        vec![AppEvent::NotificationResolved { id: id.to_string(), action }]
    }

    pub fn select(&mut self, id: &str, ctx: &AppContext) -> Option<Vec<AppEvent>> {
        let (n, action) = parse(id)?;
        let n = n.to_string();
        Some(match action {
            Some(action) => self.apply(&n, action, ctx),
            None if self.position(&n).is_some() => {
                self.expanded = Some(n.clone());
                vec![AppEvent::NotificationExpanded { id: n }]
            }
            None => Vec::new(),
        })
    }

    pub fn drag_start(&mut self, target: Option<&str>, ctx: &AppContext) {
        self.shortcut = match (ctx.shortcuts, target.and_then(parse)) {
            (true, Some((n, _))) if self.position(n).is_some() => {
                Some(ShortcutDrag { target: n.to_string(), net_x: 0.0 })
            }
            _ => None,
        };
    }

    pub fn drag_update(&mut self, delta: Vec3, ctx: &AppContext) {
        if let Some(s) = &mut self.shortcut {
            s.net_x += delta.x;
        }
        if delta.y != 0.0 {
            self.scroll = scroll_update(ctx.mode, &self.scroll, [0.0, delta.y], ctx.pan_gain);
        }
    }

    pub fn drag_end(&mut self, committed: bool, ctx: &AppContext) -> Vec<AppEvent> {
        let Some(s) = self.shortcut.take() else {
            return Vec::new();
        };
        if !committed {
            return Vec::new();
        }
        if s.net_x <= -ctx.shortcut_threshold {
            self.apply(&s.target, NotificationAction::Check, ctx)
        } else if s.net_x >= ctx.shortcut_threshold {
            self.apply(&s.target, NotificationAction::Delete, ctx)
        } else {
            Vec::new()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(s: &NotificationsState) -> Vec<&str> {
        s.items.iter().map(|n| n.id.as_str()).collect()
    }

    #[test]
    fn two_selection_delete() {
        let ctx = AppContext::default();
        let mut s = NotificationsState::default();
        s.select("notif.n2", &ctx).unwrap();
        assert_eq!(s.expanded.as_deref(), Some("n2"));
        assert!(s.elements(&ctx.extent).iter().any(|e| e.id == "notif.n2.delete"));
        s.select("notif.n2.delete", &ctx).unwrap();
        assert!(!ids(&s).contains(&"n2"));
        assert_eq!(s.expanded, None);
        // Already removed: no-op.
        assert_eq!(s.select("notif.n2.check", &ctx), Some(Vec::new()));
    }

    #[test]
    fn postpone_moves_to_end() {
        let ctx = AppContext::default();
        let mut s = NotificationsState::default();
        s.items.truncate(4);
        s.select("notif.n3", &ctx).unwrap();
        s.select("notif.n3.postpone", &ctx).unwrap();
        assert_eq!(ids(&s), vec!["n1", "n2", "n4", "n3"]);
    }

    #[test]
    fn drag_left_shortcut_checks() {
        let ctx = AppContext { shortcuts: true, ..AppContext::default() };
        let mut s = NotificationsState::default();
        s.drag_start(Some("notif.n1"), &ctx);
        for _ in 0..10 {
            s.drag_update(Vec3::new(-0.005, 0.0, 0.0), &ctx);
        }
        let ev = s.drag_end(true, &ctx);
        assert_eq!(ev, vec![AppEvent::NotificationResolved { id: "n1".into(), action: NotificationAction::Check }]);
        assert!(!ids(&s).contains(&"n1"));
    }

    #[test]
    fn shortcut_needs_flag_and_distance() {
        let mut s = NotificationsState::default();
        let off = AppContext::default();
        s.drag_start(Some("notif.n1"), &off);
        s.drag_update(Vec3::new(0.05, 0.0, 0.0), &off);
        assert!(s.drag_end(true, &off).is_empty());
        let on = AppContext { shortcuts: true, ..AppContext::default() };
        s.drag_start(Some("notif.n1"), &on);
        s.drag_update(Vec3::new(0.02, 0.0, 0.0), &on);
        assert!(s.drag_end(true, &on).is_empty());
        s.drag_start(Some("notif.n1"), &on);
        s.drag_update(Vec3::new(0.05, 0.0, 0.0), &on);
        assert!(s.drag_end(false, &on).is_empty());
        assert_eq!(s.items.len(), 8);
    }

    #[test]
    fn vertical_drag_scrolls_list() {
        let ctx = AppContext::default();
        let mut s = NotificationsState::default();
        let before = s.elements(&ctx.extent);
        assert!(!before.iter().any(|e| e.id == "notif.n8"));
        s.drag_update(Vec3::new(0.0, -0.2, 0.0), &ctx);
        let after = s.elements(&ctx.extent);
        assert!(after.iter().any(|e| e.id == "notif.n8"));
        assert!(s.scroll.offset[1] >= s.scroll.min[1]);
    }
}
