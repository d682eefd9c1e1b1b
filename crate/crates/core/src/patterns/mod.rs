//! Directivity patterns for sources and sensors.
//!
//! A [`Pattern`] maps a frequency and an [`Orientation`] (the direction of
//! the counterpart in the local frame) to a complex gain. Analytic families
//! depend on `cos(theta)` only; tabulated families carry coefficient or
//! sample tracks on a discrete frequency grid, looked up at the nearest
//! grid frequency.

pub mod file;
pub mod harmonics;
pub mod voice;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::orientation::Orientation;

pub use harmonics::{associated_legendre, spherical_harmonic};

/// Sorted, strictly increasing list of frequencies in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid(Vec<f64>);

impl FrequencyGrid {
    pub fn new(mut frequencies: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::InvalidPattern("empty frequency grid".into()));
        }
        if frequencies.iter().any(|f| !f.is_finite() || *f < 0.0) {
            return Err(Error::InvalidPattern(
                "grid frequencies must be finite and non-negative".into(),
            ));
        }
        frequencies.sort_by(f64::total_cmp);
        if frequencies.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPattern("duplicate grid frequency".into()));
        }
        Ok(FrequencyGrid(frequencies))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the grid frequency nearest to `f`; ties go to the lower one.
    pub fn nearest(&self, f: f64) -> usize {
        let grid = &self.0;
        let upper = grid.partition_point(|&g| g < f);
        if upper == 0 {
            return 0;
        }
        if upper == grid.len() {
            return grid.len() - 1;
        }
        if f - grid[upper - 1] <= grid[upper] - f {
            upper - 1
        } else {
            upper
        }
    }
}

/// Spherical-harmonic pattern of degree `order`:
/// `G(f, theta, phi) = sum over (m, l) of g(m, l)(f) Y(m, l)(theta, phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPattern {
    order: usize,
    grid: FrequencyGrid,
    /// `coefficients[f][track]`, tracks laid out by [`harmonics::track_index`].
    coefficients: Vec<Vec<Complex64>>,
}

impl HarmonicPattern {
    pub fn new(
        order: usize,
        grid: FrequencyGrid,
        coefficients: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if coefficients.len() != grid.len() {
            return Err(Error::InvalidPattern(format!(
                "{} coefficient sets for {} grid frequencies",
                coefficients.len(),
                grid.len()
            )));
        }
        let tracks = harmonics::track_count(order);
        if let Some(bad) = coefficients.iter().find(|c| c.len() != tracks) {
            return Err(Error::InvalidPattern(format!(
                "order {order} needs {tracks} coefficient tracks, got {}",
                bad.len()
            )));
        }
        if coefficients
            .iter()
            .flatten()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidPattern("non-finite coefficient".into()));
        }
        Ok(HarmonicPattern {
            order,
            grid,
            coefficients,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Vec<Complex64>] {
        &self.coefficients
    }

    fn evaluate_tracks(&self, harmonics: &[Complex64], grid_index: usize) -> Complex64 {
        self.coefficients[grid_index]
            .iter()
            .zip(harmonics)
            .map(|(g, y)| g * y)
            .sum()
    }

    fn harmonics(&self, o: &Orientation) -> Vec<Complex64> {
        harmonics::harmonics_at(
            self.order,
            o.cos_theta,
            Complex64::new(o.cos_phi, o.sin_phi),
        )
    }
}

/// A single sampling direction of a [`SampledPattern`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleDirection {
    /// Polar angle in radians.
    pub theta: f64,
    /// Azimuth in radians.
    pub phi: f64,
}

impl SampleDirection {
    pub fn vector(&self) -> Vec3 {
        Orientation::from_angles(self.theta, self.phi).vector()
    }
}

/// Pattern known only at `L_b` sampled directions; evaluated at the sample
/// whose direction is closest to the query.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPattern {
    directions: Vec<SampleDirection>,
    vectors: Vec<Vec3>,
    grid: FrequencyGrid,
    /// `responses[f][direction]`.
    responses: Vec<Vec<Complex64>>,
}

impl SampledPattern {
    pub fn new(
        directions: Vec<SampleDirection>,
        grid: FrequencyGrid,
        responses: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if directions.is_empty() {
            return Err(Error::InvalidPattern(
                "sampled pattern has no directions".into(),
            ));
        }
        if responses.len() != grid.len() || responses.iter().any(|r| r.len() != directions.len()) {
            return Err(Error::InvalidPattern(
                "every grid frequency needs one response per direction".into(),
            ));
        }
        if responses
            .iter()
            .flatten()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidPattern("non-finite response".into()));
        }
        let vectors = directions.iter().map(SampleDirection::vector).collect();
        Ok(SampledPattern {
            directions,
            vectors,
            grid,
            responses,
        })
    }

    pub fn directions(&self) -> &[SampleDirection] {
        &self.directions
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn responses(&self) -> &[Vec<Complex64>] {
        &self.responses
    }
}

/// Index of the direction maximizing `directions[i] . gamma`.
/// Ties keep the lowest index. Panics on an empty slice.
pub fn nearest_sample_lookup(directions: &[Vec3], gamma: &Vec3) -> usize {
    assert!(!directions.is_empty(), "empty sample grid");
    let mut best = 0;
    let mut best_dot = directions[0].dot(gamma);
    for (i, d) in directions.iter().enumerate().skip(1) {
        let dot = d.dot(gamma);
        if dot > best_dot {
            best = i;
            best_dot = dot;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pattern {
    Omnidirectional,
    /// `cos(theta)`.
    Dipole,
    /// `0.5 + 0.5 cos(theta)`.
    Cardioid,
    /// `(sqrt(2) - 1) + (2 - sqrt(2)) cos(theta)`.
    Supercardioid,
    /// Frequency-dependent talker model, see [`simplified_speaker`].
    SimplifiedSpeaker,
    SphericalHarmonics(HarmonicPattern),
    SampledGrid(SampledPattern),
}

/// Talker radiation model: a cardioid whose order grows with frequency,
/// blended with a small rear lobe that fades above a few kHz.
///
/// Omnidirectional at DC and always unity on axis.
pub fn simplified_speaker(frequency: f64, cos_theta: f64) -> Result<f64> {
    let x = frequency / 1000.0;
    let poly = 1.0 + 0.6743 * x + 0.3776 * x * x - 0.0540 * x.powi(3) + 0.020 * x.powi(4);
    if !(poly > 0.0) {
        return Err(Error::DirectivityOrder(frequency));
    }
    let rho = poly.ln();
    let c = cos_theta.clamp(-1.0, 1.0);
    let rear = (0.5 * (1.0 - c)).powi(8) / ((1.0 + x) * (1.0 + x));
    let front = (0.5 * (1.0 + c)).powf(rho);
    Ok(rear * (1.0 - front) + front)
}

impl Pattern {
    pub fn name(&self) -> &'static str {
        match self {
            Pattern::Omnidirectional => "omnidirectional",
            Pattern::Dipole => "dipole",
            Pattern::Cardioid => "cardioid",
            Pattern::Supercardioid => "supercardioid",
            Pattern::SimplifiedSpeaker => "speaker",
            Pattern::SphericalHarmonics(_) => "spherical_harmonics",
            Pattern::SampledGrid(_) => "sampled_grid",
        }
    }

    /// Parses a built-in pattern name.
    pub fn builtin(name: &str) -> Option<Pattern> {
        match name {
            "omni" | "omnidirectional" => Some(Pattern::Omnidirectional),
            "dipole" | "figure8" => Some(Pattern::Dipole),
            "cardioid" => Some(Pattern::Cardioid),
            "supercardioid" => Some(Pattern::Supercardioid),
            "speaker" | "simplified_speaker" => Some(Pattern::SimplifiedSpeaker),
            _ => None,
        }
    }

    pub fn is_omnidirectional(&self) -> bool {
        matches!(self, Pattern::Omnidirectional)
    }

    /// Gain towards `o` at `frequency`, which must lie in `[0, sample_rate / 2]`.
    pub fn evaluate(&self, frequency: f64, sample_rate: f64, o: &Orientation) -> Result<Complex64> {
        let nyquist = sample_rate / 2.0;
        if !(0.0..=nyquist).contains(&frequency) {
            return Err(Error::FrequencyOutOfRange { frequency, nyquist });
        }
        Ok(self.response(o, &[frequency])?[0])
    }

    /// Gains towards `o` at every frequency in `frequencies`.
    ///
    /// Angular work is done once; tabulated patterns are summed once per
    /// distinct grid frequency.
    pub fn response(&self, o: &Orientation, frequencies: &[f64]) -> Result<Vec<Complex64>> {
        let real = |g: f64| vec![Complex64::new(g, 0.0); frequencies.len()];
        let c = o.cos_theta;
        Ok(match self {
            Pattern::Omnidirectional => real(1.0),
            Pattern::Dipole => real(c),
            Pattern::Cardioid => real(0.5 + 0.5 * c),
            Pattern::Supercardioid => {
                let s2 = std::f64::consts::SQRT_2;
                real((s2 - 1.0) + (2.0 - s2) * c)
            }
            Pattern::SimplifiedSpeaker => frequencies
                .iter()
                .map(|&f| simplified_speaker(f, c).map(|g| Complex64::new(g, 0.0)))
                .collect::<Result<_>>()?,
            Pattern::SphericalHarmonics(sh) => {
                let y = sh.harmonics(o);
                let mut cache: Vec<Option<Complex64>> = vec![None; sh.grid.len()];
                frequencies
                    .iter()
                    .map(|&f| {
                        let idx = sh.grid.nearest(f);
                        *cache[idx].get_or_insert_with(|| sh.evaluate_tracks(&y, idx))
                    })
                    .collect()
            }
            Pattern::SampledGrid(grid) => {
                let dir = nearest_sample_lookup(&grid.vectors, &o.vector());
                frequencies
                    .iter()
                    .map(|&f| grid.responses[grid.grid.nearest(f)][dir])
                    .collect()
            }
        })
    }
}
