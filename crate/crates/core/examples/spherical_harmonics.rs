//! Spherical-harmonic patterns: a few values, a quadrature orthonormality
//! check and a cardioid rebuilt from its degree-1 projection.

use anchor_rir::orientation::Orientation;
use anchor_rir::patterns::harmonics::{gauss_legendre, project, spherical_harmonic};
use anchor_rir::patterns::{FrequencyGrid, HarmonicPattern, Pattern};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> anchor_rir::Result<()> {
    for (m, l) in [(0, 0), (1, 0), (1, 1), (2, -1), (3, 2)] {
        let y = spherical_harmonic(m, l, 0.7, 1.1)?;
        println!("Y_{m},{l}(0.7, 1.1) = {y:.6}");
    }

    let (nodes, weights) = gauss_legendre(12);
    let n_phi = 32;
    let mut worst: f64 = 0.0;
    for (a, b) in [((2, 1), (2, 1)), ((2, 1), (3, 1)), ((4, -2), (4, 2))] {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(&weights) {
            for k in 0..n_phi {
                let phi = 2.0 * PI * k as f64 / n_phi as f64;
                let ya = spherical_harmonic(a.0, a.1, x.acos(), phi)?;
                let yb = spherical_harmonic(b.0, b.1, x.acos(), phi)?;
                acc += ya * yb.conj() * (w * 2.0 * PI / n_phi as f64);
            }
        }
        let want = if a == b { 1.0 } else { 0.0 };
        worst = worst.max((acc - want).norm());
        println!("<Y{a:?}, Y{b:?}> = {acc:.3e}");
    }
    println!("worst orthonormality error {worst:.2e}");

    let coeffs = project(1, |x, _| Complex64::new(0.5 + 0.5 * x, 0.0));
    let grid = FrequencyGrid::new(vec![0.0])?;
    let sh = Pattern::SphericalHarmonics(HarmonicPattern::new(1, grid, vec![coeffs])?);
    for theta in [0.0, PI / 3.0, PI / 2.0, PI] {
        let o = Orientation::from_angles(theta, 0.4);
        let got = sh.evaluate(1000.0, 16000.0, &o)?;
        let want = Pattern::Cardioid.evaluate(1000.0, 16000.0, &o)?;
        println!(
            "theta {theta:.3}: harmonic {:.6}  cardioid {:.6}",
            got.re, want.re
        );
    }
    Ok(())
}
