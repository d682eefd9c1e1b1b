//! Direct path only, compared with the 1/(4 pi d) amplitude.

use anchor_rir::renderer::render_contributions;
use anchor_rir::{DirectedEndpoint, Pattern, RenderConfig, RoomSpec, Transducer, Vec3};

fn main() -> anchor_rir::Result<()> {
    let room = RoomSpec::new([4.0; 3], [0.96, 0.8, 0.96, 0.9, 0.5, 0.5], 340.0, 16000.0)?;
    let source = Transducer::new(
        DirectedEndpoint::new(
            Vec3::new(3.0, 3.0, 1.0),
            Vec3::new(3.1, 3.1, 1.0),
            Vec3::new(2.9, 3.1, 1.0),
        )?,
        Pattern::Omnidirectional,
    );
    let mic = Transducer::new(
        DirectedEndpoint::new(
            Vec3::new(1.5, 1.5, 1.0),
            Vec3::new(1.4, 1.4, 1.0),
            Vec3::new(1.6, 1.4, 1.0),
        )?,
        Pattern::Omnidirectional,
    );
    let cfg = RenderConfig::new([0, 0, 0], -1, 2048);
    let mut h = vec![0.0; cfg.length];
    for c in render_contributions(&room, &source, &mic, &cfg, None)? {
        if c.index.is_real_source() {
            c.accumulate(&mut h);
        }
    }

    let d = (source.pose.position - mic.pose.position).norm();
    let delay = d / room.speed_of_sound * room.sample_rate;
    let expected = 1.0 / (4.0 * std::f64::consts::PI * d);
    let (at, peak) =
        h.iter().enumerate().fold(
            (0, 0.0f64),
            |(i, m), (j, v)| if v.abs() > m { (j, v.abs()) } else { (i, m) },
        );
    println!("distance        {d:.7} m");
    println!("delay           {delay:.5} samples");
    println!("peak tap        {peak:.6} at sample {at}");
    println!("1/(4 pi d)      {expected:.6}");
    println!("tap sum         {:.6}", h.iter().sum::<f64>());
    Ok(())
}
