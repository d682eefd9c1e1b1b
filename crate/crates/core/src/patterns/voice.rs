//! Synthetic talker pattern in spherical-harmonic form.
//!
//! Stands in for a measured voice radiation dataset: the simplified speaker
//! model with a mild left/right asymmetry, projected onto degree-9
//! harmonics on a 250 Hz frequency grid up to 8 kHz.

use num_complex::Complex64;

use super::harmonics::project;
use super::{simplified_speaker, FrequencyGrid, HarmonicPattern, Pattern};

/// Harmonic degree of the synthetic set.
pub const VOICE_ORDER: usize = 9;

/// Grid spacing of the synthetic set in Hz.
pub const VOICE_GRID_STEP: f64 = 250.0;

/// Highest grid frequency in Hz.
pub const VOICE_GRID_MAX: f64 = 8000.0;

/// Target gain of the synthetic talker before projection.
pub fn voice_target(frequency: f64, cos_theta: f64, phi: f64) -> f64 {
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    let base = simplified_speaker(frequency, cos_theta).expect("grid frequencies are in range");
    base * (0.9 + 0.1 * sin_theta * phi.cos())
}

/// Builds the synthetic degree-9 talker pattern.
pub fn synthetic_voice() -> Pattern {
    let steps = (VOICE_GRID_MAX / VOICE_GRID_STEP).round() as usize;
    let freqs: Vec<f64> = (0..=steps).map(|k| k as f64 * VOICE_GRID_STEP).collect();
    let sets = freqs
        .iter()
        .map(|&f| {
            project(VOICE_ORDER, |x, phi| {
                Complex64::new(voice_target(f, x, phi), 0.0)
            })
        })
        .collect();
    let grid = FrequencyGrid::new(freqs).expect("static grid is valid");
    Pattern::SphericalHarmonics(
        HarmonicPattern::new(VOICE_ORDER, grid, sets).expect("projection yields all tracks"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::Orientation;
    use std::f64::consts::PI;

    #[test]
    fn front_to_back_ratio_exceeds_10_db_at_4khz() {
        let p = synthetic_voice();
        let front = p
            .evaluate(4000.0, 16000.0, &Orientation::from_angles(0.0, 0.0))
            .unwrap();
        let back = p
            .evaluate(4000.0, 16000.0, &Orientation::from_angles(PI, 0.0))
            .unwrap();
        let ratio_db = 20.0 * (front.norm() / back.norm()).log10();
        assert!(ratio_db > 10.0, "{ratio_db} dB");
    }

    #[test]
    fn projection_tracks_the_target() {
        let p = synthetic_voice();
        for f in [250.0, 1000.0, 4000.0] {
            for theta in [0.0, 0.7, 1.6, 2.5] {
                for phi in [0.0, 1.3, 4.0] {
                    let got = p
                        .evaluate(f, 16000.0, &Orientation::from_angles(theta, phi))
                        .unwrap();
                    let want = voice_target(f, theta.cos(), phi);
                    assert!(
                        (got.re - want).abs() < 0.05,
                        "{f} {theta} {phi}: {got} vs {want}"
                    );
                    assert!(got.im.abs() < 1e-12);
                }
            }
        }
    }
}
