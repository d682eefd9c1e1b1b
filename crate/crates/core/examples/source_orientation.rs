//! The three talker orientations: facing the microphone, turned by 90
//! degrees and turned away, with the simplified speaker model and the
//! synthetic degree-9 talker.

use anchor_rir::delay::frequency_response;
use anchor_rir::orientation::{frame_from_anchors, source_orientation};
use anchor_rir::patterns::voice::synthetic_voice;
use anchor_rir::renderer::render_contributions;
use anchor_rir::{DirectedEndpoint, Pattern, RenderConfig, RoomSpec, Transducer, Vec3};

fn main() -> anchor_rir::Result<()> {
    let room = RoomSpec::new([4.0; 3], [0.96, 0.8, 0.96, 0.9, 0.5, 0.5], 340.0, 16000.0)?;
    let r = Vec3::new(3.0, 3.0, 1.0);
    let mic_pos = Vec3::new(1.5, 1.5, 1.0);
    let mic = Transducer::new(
        DirectedEndpoint::new(mic_pos, Vec3::new(1.4, 1.4, 1.0), Vec3::new(1.6, 1.4, 1.0))?,
        Pattern::Omnidirectional,
    );
    let poses = [
        ("0 deg", Vec3::new(3.1, 3.1, 1.0), Vec3::new(2.9, 3.1, 1.0)),
        ("90 deg", Vec3::new(3.1, 2.9, 1.0), Vec3::new(2.9, 2.9, 1.0)),
        (
            "180 deg",
            Vec3::new(2.9, 2.9, 1.0),
            Vec3::new(2.9, 3.1, 1.0),
        ),
    ];
    let omega = 2.0 * std::f64::consts::PI * 4000.0 / room.sample_rate;
    let cfg = RenderConfig::new([4, 4, 4], 2, 2048);

    for (label, pattern) in [
        ("speaker", Pattern::SimplifiedSpeaker),
        ("voice", synthetic_voice()),
    ] {
        println!("{label}");
        for (name, az, ax) in &poses {
            let pose = DirectedEndpoint::new(r, *az, *ax)?;
            let o = source_orientation(&frame_from_anchors(&pose)?, &(r - mic_pos))?;
            let talker = Transducer::new(pose, pattern.clone());
            let parts = render_contributions(&room, &talker, &mic, &cfg, None)?;
            let direct = parts
                .iter()
                .find(|c| c.index.is_real_source())
                .expect("direct path");
            let gain = frequency_response(&direct.taps, omega).norm();
            let energy: f64 = parts.iter().flat_map(|c| &c.taps).map(|t| t * t).sum();
            println!(
                "  {name:>7}  cos(theta) {:+.3}  |H_direct(4 kHz)| {gain:.5}  total tap energy {energy:.3e}",
                o.cos_theta
            );
        }
    }
    Ok(())
}
