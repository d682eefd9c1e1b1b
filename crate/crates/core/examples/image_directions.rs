//! Front directions of the mirrored talker frames.
//!
//! Every image front is the real front with some axes flipped, so at most
//! eight directions occur; a front lying in a coordinate plane yields fewer.

use anchor_rir::geometry::enumerate_images;
use anchor_rir::{DirectedEndpoint, RoomSpec, Vec3};

fn distinct(fronts: &[Vec3]) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for f in fronts {
        if !out.iter().any(|g| (g - f).amax() < 1e-12) {
            out.push(*f);
        }
    }
    out
}

fn main() -> anchor_rir::Result<()> {
    let room = RoomSpec::new([4.0; 3], [0.96, 0.8, 0.96, 0.9, 0.5, 0.5], 340.0, 16000.0)?;
    let r = Vec3::new(3.0, 3.0, 1.0);
    for (label, az, ax) in [
        (
            "facing anchors",
            Vec3::new(3.1, 3.1, 1.0),
            Vec3::new(2.9, 3.1, 1.0),
        ),
        (
            "tilted anchors",
            Vec3::new(3.1, 3.1, 1.1),
            Vec3::new(2.9, 3.1, 1.0),
        ),
    ] {
        let pose = DirectedEndpoint::new(r, az, ax)?;
        let images = enumerate_images(&room, &r, [3, 3, 3])?;
        let fronts: Vec<Vec3> = images
            .iter()
            .map(|(idx, _)| pose.mirrored(idx, &room).front())
            .collect();
        let set = distinct(&fronts);
        println!(
            "{label}: {} images, {} distinct fronts",
            images.len(),
            set.len()
        );
        for f in set {
            println!("  ({:+.4}, {:+.4}, {:+.4})", f.x, f.y, f.z);
        }
    }
    Ok(())
}
