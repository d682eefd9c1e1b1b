//! Fractional-delay FIR synthesis.
//!
//! A propagation delay splits into an integer sample offset and a
//! fractional remainder in `[-0.5, 0.5)`. Each image contributes a short
//! FIR of length `2D + 1` that embeds the fractional delay together with
//! the image's combined pattern response, centred on the integer offset.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Default half length `D` of per-image tap vectors.
pub const DEFAULT_HALF_LENGTH: usize = 32;

/// Relative tolerance for the conjugate-symmetry check in [`pattern_taps`].
const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaySplit {
    /// Delay rounded to the nearest sample.
    pub samples: i64,
    /// Remainder in samples, in `[-0.5, 0.5)`.
    pub fraction: f64,
}

/// Splits `delay` seconds into whole samples and a fractional remainder.
/// Halfway values round up, so `100.5` samples becomes `(101, -0.5)`.
pub fn split_delay(delay: f64, sample_rate: f64) -> Result<DelaySplit> {
    if !(delay >= 0.0) {
        return Err(Error::NegativeDelay(delay));
    }
    let exact = delay * sample_rate;
    let samples = (exact + 0.5).floor();
    Ok(DelaySplit {
        samples: samples as i64,
        fraction: exact - samples,
    })
}

/// Tap vector of length `2D + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TapVector {
    pub taps: Vec<f64>,
    pub half_length: usize,
    /// Centering offset `D_e` used during synthesis (`D` for closed-form taps).
    pub centering: usize,
}

impl TapVector {
    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }
}

/// Normalized sinc, exact at integer arguments.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x.fract() == 0.0 {
        0.0
    } else {
        let px = PI * x;
        px.sin() / px
    }
}

/// Closed-form taps for a flat response:
/// `c(l) = sinc(l - zeta - D)` for `l = 0..=2D`.
pub fn omni_taps(fraction: f64, half_length: usize) -> TapVector {
    let d = half_length as f64;
    TapVector {
        taps: (0..=2 * half_length)
            .map(|l| sinc(l as f64 - fraction - d))
            .collect(),
        half_length,
        centering: half_length,
    }
}

/// Hamming window centred on the fractional delay:
/// `0.54 - 0.46 cos(pi (l - zeta) / D)`.
pub fn anti_alias_window(fraction: f64, half_length: usize) -> Vec<f64> {
    let d = half_length as f64;
    (0..=2 * half_length)
        .map(|l| 0.54 - 0.46 * (PI * (l as f64 - fraction) / d).cos())
        .collect()
}

/// Smallest power of two not below `8 (2D + 1)`.
pub fn default_fft_size(half_length: usize) -> usize {
    (8 * (2 * half_length + 1)).next_power_of_two()
}

/// Checks that `spectrum[N - k] == conj(spectrum[k])`, with real DC and
/// Nyquist bins.
pub fn check_conjugate_symmetric(spectrum: &[Complex64]) -> Result<()> {
    let n = spectrum.len();
    let scale = spectrum.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let tol = SYMMETRY_TOL * scale;
    for k in 0..=n / 2 {
        let mirror = (n - k) % n;
        if (spectrum[k] - spectrum[mirror].conj()).norm() > tol {
            return Err(Error::NotConjugateSymmetric(k));
        }
    }
    Ok(())
}

/// Synthesizes taps for a combined response sampled on the DFT grid
/// `omega_k = 2 pi k / N`, `k = 0..N`.
///
/// Computes `e(l) = IDFT[C(omega) e^{-j omega (zeta + D_e)}](l)` and returns
/// `c(l) = e(D_e - D + l)`. Bins above `N / 2` are treated as negative
/// frequencies `omega_k - 2 pi`, and the Nyquist term keeps only its real
/// part, so a conjugate-symmetric `C` yields real taps for any fractional
/// delay.
pub fn pattern_taps(
    spectrum: &[Complex64],
    fraction: f64,
    half_length: usize,
    centering: usize,
) -> Result<TapVector> {
    let n = spectrum.len();
    let taps_len = 2 * half_length + 1;
    if half_length == 0 {
        return Err(Error::InvalidTaps("half length must be at least 1".into()));
    }
    if centering < half_length {
        return Err(Error::InvalidTaps(format!(
            "centering {centering} is below half length {half_length}"
        )));
    }
    if n < 4 * taps_len {
        return Err(Error::InvalidTaps(format!(
            "DFT size {n} is below 4 (2D + 1) = {}",
            4 * taps_len
        )));
    }
    if centering + half_length >= n {
        return Err(Error::InvalidTaps(format!(
            "centering {centering} + half length {half_length} exceeds DFT size {n}"
        )));
    }
    check_conjugate_symmetric(spectrum)?;

    let shift = fraction + centering as f64;
    // Only bins 0..=N/2 are read, so the transform is exactly Hermitian.
    let mut buf: Vec<Complex64> = (0..n)
        .map(|k| {
            if k == 0 {
                Complex64::new(spectrum[0].re, 0.0)
            } else if 2 * k == n {
                // Nyquist: average of the +pi and -pi phasors.
                Complex64::new(spectrum[k].re * (PI * shift).cos(), 0.0)
            } else if 2 * k < n {
                let omega = 2.0 * PI * k as f64 / n as f64;
                spectrum[k] * Complex64::from_polar(1.0, -omega * shift)
            } else {
                let omega = 2.0 * PI * (n - k) as f64 / n as f64;
                (spectrum[n - k] * Complex64::from_polar(1.0, -omega * shift)).conj()
            }
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let norm = 1.0 / n as f64;
    let start = centering - half_length;
    let window = &buf[start..start + taps_len];
    Ok(TapVector {
        taps: window.iter().map(|c| c.re * norm).collect(),
        half_length,
        centering,
    })
}

/// Frequency response `sum_l h(l) e^{-j omega l}` of a tap vector.
pub fn frequency_response(taps: &[f64], omega: f64) -> Complex64 {
    taps.iter()
        .enumerate()
        .map(|(l, &h)| Complex64::from_polar(h, -omega * l as f64))
        .sum()
}

/// Group delay in samples of `taps` at `omega`.
pub fn group_delay(taps: &[f64], omega: f64) -> f64 {
    let h = frequency_response(taps, omega);
    let dh: Complex64 = taps
        .iter()
        .enumerate()
        .map(|(l, &t)| Complex64::from_polar(t * l as f64, -omega * l as f64))
        .sum();
    (dh / h).re
}
