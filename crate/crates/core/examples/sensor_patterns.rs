//! The four sensor patterns against the three talker orientations.

use anchor_rir::{render, DirectedEndpoint, Pattern, RenderConfig, RoomSpec, Transducer, Vec3};

fn main() -> anchor_rir::Result<()> {
    let room = RoomSpec::new([4.0; 3], [0.96, 0.8, 0.96, 0.9, 0.5, 0.5], 340.0, 16000.0)?;
    let mic_pose = DirectedEndpoint::new(
        Vec3::new(1.5, 1.5, 1.0),
        Vec3::new(1.4, 1.4, 1.0),
        Vec3::new(1.6, 1.4, 1.0),
    )?;
    let talker_poses = [
        ("0", Vec3::new(3.1, 3.1, 1.0), Vec3::new(2.9, 3.1, 1.0)),
        ("90", Vec3::new(3.1, 2.9, 1.0), Vec3::new(2.9, 2.9, 1.0)),
        ("180", Vec3::new(2.9, 2.9, 1.0), Vec3::new(2.9, 3.1, 1.0)),
    ];
    let cfg = RenderConfig::new([8, 8, 8], 2, 2048);
    println!(
        "{:<14} {:>6} {:>12} {:>12}",
        "sensor", "deg", "peak", "energy"
    );
    for sensor in [
        Pattern::Omnidirectional,
        Pattern::Dipole,
        Pattern::Cardioid,
        Pattern::Supercardioid,
    ] {
        let mic = Transducer::new(mic_pose, sensor.clone());
        for (deg, az, ax) in &talker_poses {
            let talker = Transducer::new(
                DirectedEndpoint::new(Vec3::new(3.0, 3.0, 1.0), *az, *ax)?,
                Pattern::SimplifiedSpeaker,
            );
            let h = render(&room, &talker, &mic, &cfg)?;
            println!(
                "{:<14} {:>6} {:>12.4e} {:>12.4e}",
                sensor.name(),
                deg,
                h.peak(),
                h.energy()
            );
        }
    }
    Ok(())
}
