//! Polar data for the simplified speaker model at several frequencies.
//!
//! `cargo run --example pattern_plot -- speaker.csv`

use std::path::PathBuf;

use anchor_rir::output::{emit_pattern_plot, write_plot_csv};
use anchor_rir::Pattern;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let freqs = [250.0, 1000.0, 2000.0, 4000.0, 7000.0];
    let rows = emit_pattern_plot(&Pattern::SimplifiedSpeaker, &freqs, 1.0, 16000.0)?;
    for f in freqs {
        let at = |deg: f64| {
            rows.iter()
                .find(|r| r.frequency == f && r.theta_deg == deg)
                .map(|r| r.gain)
                .unwrap_or(f64::NAN)
        };
        println!(
            "{f:>6} Hz: 0 deg {:.3}  90 deg {:.3}  180 deg {:.3}",
            at(0.0),
            at(90.0),
            at(180.0)
        );
    }
    if let Some(path) = std::env::args().nth(1).map(PathBuf::from) {
        write_plot_csv(&path, &rows)?;
        println!("wrote {} rows to {}", rows.len(), path.display());
    }
    Ok(())
}
