//! Where the panel lands for the same hand in each reference frame.

use gazepinch::geometry::{billboard_toward, Orientation, Pose, Vec3};
use gazepinch::reference_frame::{resolve_ui_pose, PlacementOffsets, ReferenceFrame};

fn main() {
    let head = Pose::new(Vec3::new(0.0, 1.6, 0.0), Orientation::IDENTITY);
    let palm_at = Vec3::new(0.12, 1.2, -0.35);
    let facing = billboard_toward(palm_at, head.position, Vec3::Y).unwrap();
    let palm = Pose::new(palm_at, facing);
    let offsets = PlacementOffsets::default();
    for frame in ReferenceFrame::ALL {
        let pose = resolve_ui_pose(frame, &palm, &head, &offsets);
        let p = pose.position;
        let n = pose.orientation.normal();
        println!(
            "{:<15} panel at ({:+.3}, {:+.3}, {:+.3}), normal ({:+.2}, {:+.2}, {:+.2}), {:.3} m from palm, peephole {:?}",
            frame.as_str(),
            p.x,
            p.y,
            p.z,
            n.x,
            n.y,
            n.z,
            p.distance(palm_at),
            gazepinch::navigation::PeepholeMode::for_frame(frame),
        );
    }
}
