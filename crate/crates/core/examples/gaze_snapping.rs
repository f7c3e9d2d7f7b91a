//! Gaze points near, inside and between home-menu icons, and what each
//! one hovers.

use gazepinch::apps::{AppContext, SessionState};
use gazepinch::geometry::PanelPoint;
use gazepinch::reference_frame::ReferenceFrame;
use gazepinch::targeting::resolve_hover;

fn main() {
    let session = SessionState::new(ReferenceFrame::OnHand);
    let elements = session.elements(&AppContext::default());
    for e in &elements {
        let r = &e.rect;
        println!("{:<22} [{:.3}, {:.3}] - [{:.3}, {:.3}]{}", e.id, r.min_u, r.min_v, r.max_u, r.max_v, if e.snap_exempt { " exempt" } else { "" });
    }
    println!();
    for (u, v) in [(0.5, 0.5), (0.02, 0.02), (0.98, 0.6), (0.33, 0.4), (0.5, 0.97)] {
        let hover = resolve_hover(Some(PanelPoint::new(u, v)), &elements);
        println!("gaze ({u:.2}, {v:.2}) -> {}", hover.as_deref().unwrap_or("nothing"));
    }
}
