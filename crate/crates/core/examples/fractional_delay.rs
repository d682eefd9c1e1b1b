//! Windowed fractional-delay taps: group delay and magnitude over the band.

use anchor_rir::delay::{anti_alias_window, frequency_response, group_delay, omni_taps};
use std::f64::consts::PI;

fn main() -> anchor_rir::Result<()> {
    let d = 32;
    println!("{:>7} {:>14} {:>14}", "zeta", "max |gd err|", "max |mag-1|");
    for k in 0..8 {
        let zeta = -0.5 + k as f64 / 8.0;
        let raw = omni_taps(zeta, d);
        let w = anti_alias_window(zeta, d);
        let taps: Vec<f64> = raw.taps.iter().zip(&w).map(|(c, w)| c * w).collect();
        let (mut gd_err, mut mag_err) = (0.0f64, 0.0f64);
        for i in 1..=200 {
            let omega = 0.8 * PI * i as f64 / 200.0;
            gd_err = gd_err.max((group_delay(&taps, omega) - (d as f64 + zeta)).abs());
            mag_err = mag_err.max((frequency_response(&taps, omega).norm() - 1.0).abs());
        }
        println!("{zeta:>7.3} {gd_err:>14.4e} {mag_err:>14.4e}");
    }
    Ok(())
}
