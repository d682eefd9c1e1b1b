//! A measured-style pattern given at a few directions, resolved by
//! nearest-direction lookup, then used as the sensor in a render.

use anchor_rir::orientation::Orientation;
use anchor_rir::patterns::{FrequencyGrid, Pattern, SampleDirection, SampledPattern};
use anchor_rir::{render, DirectedEndpoint, RenderConfig, RoomSpec, Transducer, Vec3};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> anchor_rir::Result<()> {
    // front, four sides and back, one frequency band
    let directions = vec![
        SampleDirection {
            theta: 0.0,
            phi: 0.0,
        },
        SampleDirection {
            theta: PI / 2.0,
            phi: 0.0,
        },
        SampleDirection {
            theta: PI / 2.0,
            phi: PI / 2.0,
        },
        SampleDirection {
            theta: PI / 2.0,
            phi: PI,
        },
        SampleDirection {
            theta: PI / 2.0,
            phi: 1.5 * PI,
        },
        SampleDirection {
            theta: PI,
            phi: 0.0,
        },
    ];
    let gains = [1.0, 0.5, 0.5, 0.5, 0.5, 0.1];
    let row: Vec<Complex64> = gains.iter().map(|&g| Complex64::new(g, 0.0)).collect();
    let grid = FrequencyGrid::new(vec![1000.0])?;
    let pattern = Pattern::SampledGrid(SampledPattern::new(directions, grid, vec![row])?);

    for theta_deg in [0.0, 30.0, 60.0, 100.0, 150.0, 180.0] {
        let o = Orientation::from_angles(f64::to_radians(theta_deg), 0.3);
        println!(
            "theta {theta_deg:>5}: gain {}",
            pattern.evaluate(2000.0, 16000.0, &o)?.re
        );
    }

    let room = RoomSpec::new([4.0; 3], [0.96, 0.8, 0.96, 0.9, 0.5, 0.5], 340.0, 16000.0)?;
    let talker = Transducer::new(
        DirectedEndpoint::new(
            Vec3::new(3.0, 3.0, 1.0),
            Vec3::new(3.1, 3.1, 1.0),
            Vec3::new(2.9, 3.1, 1.0),
        )?,
        Pattern::SimplifiedSpeaker,
    );
    let mic = Transducer::new(
        DirectedEndpoint::new(
            Vec3::new(1.5, 1.5, 1.0),
            Vec3::new(1.4, 1.4, 1.0),
            Vec3::new(1.6, 1.4, 1.0),
        )?,
        pattern,
    );
    let h = render(&room, &talker, &mic, &RenderConfig::new([6, 6, 6], 2, 2048))?;
    println!("peak {:.4e}, energy {:.4e}", h.peak(), h.energy());
    Ok(())
}
