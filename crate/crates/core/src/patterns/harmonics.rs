//! Associated Legendre functions, complex spherical harmonics and
//! Gauss-Legendre projection onto the harmonic basis.
//!
//! Harmonics are indexed by `degree` (the band, `0..=M`) and `order`
//! (`-degree..=degree`). The Condon-Shortley phase `(-1)^order` is part of
//! the Legendre function, so `Y(degree, -order) = (-1)^order conj(Y(degree, order))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Number of coefficient tracks for a harmonic set of degree `max_degree`.
pub fn track_count(max_degree: usize) -> usize {
    (max_degree + 1) * (max_degree + 1)
}

/// Flat index of `(degree, order)` in a coefficient vector.
pub fn track_index(degree: usize, order: i32) -> usize {
    ((degree * degree + degree) as i64 + i64::from(order)) as usize
}

fn check(degree: usize, order: i32) -> Result<()> {
    if order.unsigned_abs() as usize > degree {
        Err(Error::InvalidHarmonic { degree, order })
    } else {
        Ok(())
    }
}

/// `(degree - order)! / (degree + order)!` for `order` of either sign.
fn factorial_ratio(degree: usize, order: i32) -> f64 {
    let m = order.unsigned_abs() as usize;
    let mut ratio = 1.0;
    for k in (degree - m + 1)..=(degree + m) {
        ratio *= k as f64;
    }
    if order >= 0 {
        1.0 / ratio
    } else {
        ratio
    }
}

/// Table of `P(degree, order)(x)` for `0 <= order <= degree <= max_degree`,
/// stored row-major by degree (`degree * (degree + 1) / 2 + order`).
fn legendre_table(max_degree: usize, x: f64) -> Vec<f64> {
    let tri = |l: usize, m: usize| l * (l + 1) / 2 + m;
    let mut table = vec![0.0; tri(max_degree, max_degree) + 1];
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut diag = 1.0;
    for m in 0..=max_degree {
        if m > 0 {
            diag *= -((2 * m - 1) as f64) * somx2;
        }
        table[tri(m, m)] = diag;
        if m < max_degree {
            table[tri(m + 1, m)] = x * (2 * m + 1) as f64 * diag;
        }
        for l in (m + 2)..=max_degree {
            let a = x * (2 * l - 1) as f64 * table[tri(l - 1, m)];
            let b = (l + m - 1) as f64 * table[tri(l - 2, m)];
            table[tri(l, m)] = (a - b) / (l - m) as f64;
        }
    }
    table
}

/// Associated Legendre function `P(degree, order)(x)` with the
/// Condon-Shortley phase. Negative orders follow
/// `P(l, -m) = (-1)^m (l - m)! / (l + m)! P(l, m)`.
pub fn associated_legendre(degree: usize, order: i32, x: f64) -> Result<f64> {
    check(degree, order)?;
    if !(x.abs() <= 1.0) {
        return Err(Error::LegendreDomain(x));
    }
    let m = order.unsigned_abs() as usize;
    let positive = legendre_table(degree, x)[degree * (degree + 1) / 2 + m];
    if order >= 0 {
        Ok(positive)
    } else {
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * factorial_ratio(degree, m as i32) * positive)
    }
}

fn normalization(degree: usize, order: i32) -> f64 {
    ((2 * degree + 1) as f64 / (4.0 * PI) * factorial_ratio(degree, order)).sqrt()
}

/// Complex spherical harmonic at polar angle `theta` and azimuth `phi`.
pub fn spherical_harmonic(degree: usize, order: i32, theta: f64, phi: f64) -> Result<Complex64> {
    check(degree, order)?;
    let p = associated_legendre(degree, order, theta.cos().clamp(-1.0, 1.0))?;
    Ok(Complex64::from_polar(
        normalization(degree, order) * p,
        f64::from(order) * phi,
    ))
}

/// All harmonics up to `max_degree` at the direction given by `cos_theta`
/// and the unit phasor `e^{j phi}`, laid out by [`track_index`].
pub fn harmonics_at(max_degree: usize, cos_theta: f64, azimuth: Complex64) -> Vec<Complex64> {
    let table = legendre_table(max_degree, cos_theta.clamp(-1.0, 1.0));
    let mut powers = Vec::with_capacity(max_degree + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=max_degree {
        powers.push(acc);
        acc *= azimuth;
    }
    let mut out = vec![Complex64::new(0.0, 0.0); track_count(max_degree)];
    for l in 0..=max_degree {
        for m in 0..=l {
            let base = normalization(l, m as i32) * table[l * (l + 1) / 2 + m];
            let y = powers[m] * base;
            out[track_index(l, m as i32)] = y;
            if m > 0 {
                let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
                out[track_index(l, -(m as i32))] = y.conj() * sign;
            }
        }
    }
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Projects `pattern(cos_theta, phi)` onto harmonics up to `max_degree`.
///
/// Uses `max_degree + 1` or more Gauss-Legendre nodes in `cos(theta)` and a
/// uniform azimuth grid, which integrates band-limited products exactly.
pub fn project<F>(max_degree: usize, pattern: F) -> Vec<Complex64>
where
    F: Fn(f64, f64) -> Complex64,
{
    let n_theta = 2 * max_degree + 8;
    let n_phi = 4 * max_degree + 8;
    let (nodes, weights) = gauss_legendre(n_theta);
    let d_phi = 2.0 * PI / n_phi as f64;
    let mut coefs = vec![Complex64::new(0.0, 0.0); track_count(max_degree)];
    for (&x, &w) in nodes.iter().zip(&weights) {
        for s in 0..n_phi {
            let phi = s as f64 * d_phi;
            let value = pattern(x, phi) * (w * d_phi);
            let y = harmonics_at(max_degree, x, Complex64::from_polar(1.0, phi));
            for (c, yv) in coefs.iter_mut().zip(&y) {
                *c += value * yv.conj();
            }
        }
    }
    coefs
}
