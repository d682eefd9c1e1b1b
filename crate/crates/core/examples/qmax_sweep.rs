//! Early taps for Q_max = 0, 1, 2 against the omnidirectional baseline.
//!
//! `cargo run --example qmax_sweep -- out.csv` also writes the first 1000
//! taps of each response as columns.

use std::io::Write;

use anchor_rir::{render, DirectedEndpoint, Pattern, RenderConfig, RoomSpec, Transducer, Vec3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let room = RoomSpec::new([4.0; 3], [0.96, 0.8, 0.96, 0.9, 0.5, 0.5], 340.0, 16000.0)?;
    let talker = |pattern| -> anchor_rir::Result<Transducer> {
        Ok(Transducer::new(
            DirectedEndpoint::new(
                Vec3::new(3.0, 3.0, 1.0),
                Vec3::new(3.1, 3.1, 1.0),
                Vec3::new(2.9, 3.1, 1.0),
            )?,
            pattern,
        ))
    };
    let mic = |pattern| -> anchor_rir::Result<Transducer> {
        Ok(Transducer::new(
            DirectedEndpoint::new(
                Vec3::new(1.5, 1.5, 1.0),
                Vec3::new(1.4, 1.4, 1.0),
                Vec3::new(1.6, 1.4, 1.0),
            )?,
            pattern,
        ))
    };
    let orders = [8, 8, 8];
    let baseline = render(
        &room,
        &talker(Pattern::Omnidirectional)?,
        &mic(Pattern::Omnidirectional)?,
        &RenderConfig::new(orders, -1, 2048),
    )?;
    let mut columns = vec![("baseline".to_string(), baseline.samples.clone())];
    for qmax in 0..=2 {
        let h = render(
            &room,
            &talker(Pattern::SimplifiedSpeaker)?,
            &mic(Pattern::Cardioid)?,
            &RenderConfig::new(orders, qmax, 2048),
        )?;
        let early = 1000;
        let below = (0..early)
            .filter(|&i| h.samples[i].abs() < baseline.samples[i].abs() - 1e-12)
            .count();
        println!(
            "Q_max = {qmax}: {below} of the first {early} taps attenuated, energy {:.4e} vs {:.4e}",
            h.energy(),
            baseline.energy()
        );
        columns.push((format!("qmax{qmax}"), h.samples));
    }
    if let Some(path) = std::env::args().nth(1) {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        let names: Vec<&str> = columns.iter().map(|c| c.0.as_str()).collect();
        writeln!(f, "index,{}", names.join(","))?;
        for i in 0..1000 {
            let row: Vec<String> = columns.iter().map(|c| format!("{:e}", c.1[i])).collect();
            writeln!(f, "{i},{}", row.join(","))?;
        }
        println!("wrote {path}");
    }
    Ok(())
}
