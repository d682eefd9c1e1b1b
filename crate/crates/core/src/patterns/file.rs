//! Pattern definition files.
//!
//! A pattern file is a TOML document with a `kind` key. Analytic kinds carry
//! nothing else:
//!
//! ```toml
//! kind = "supercardioid"
//! ```
//!
//! Spherical-harmonic sets list one `[degree, order, frequency_hz, re, im]`
//! record per coefficient, and every grid frequency must carry all
//! `(order + 1)^2` tracks:
//!
//! ```toml
//! kind = "spherical_harmonics"
//! order = 1
//! coefficients = [
//!     [0, 0, 0.0, 1.7724538509055159, 0.0],
//!     [1, -1, 0.0, 0.0, 0.0],
//!     [1, 0, 0.0, 1.0233267079464885, 0.0],
//!     [1, 1, 0.0, 0.0, 0.0],
//! ]
//! ```
//!
//! Sampled grids list `[theta_deg, phi_deg, frequency_hz, re, im]` records;
//! every direction must be sampled at every frequency.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::harmonics::{track_count, track_index};
use super::{FrequencyGrid, HarmonicPattern, Pattern, SampleDirection, SampledPattern};

#[derive(Debug, Error)]
pub enum PatternFileError {
    #[error("cannot read pattern file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed pattern file: {0}")]
    Parse(String),
    #[error("invalid pattern: {0}")]
    Invalid(String),
}

type HarmonicRecord = (u32, i32, f64, f64, f64);
type SampleRecord = (f64, f64, f64, f64, f64);

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum PatternDoc {
    #[serde(alias = "omni")]
    Omnidirectional {},
    Dipole {},
    Cardioid {},
    Supercardioid {},
    #[serde(alias = "simplified_speaker")]
    Speaker {},
    SphericalHarmonics {
        order: usize,
        coefficients: Vec<HarmonicRecord>,
    },
    SampledGrid {
        samples: Vec<SampleRecord>,
    },
}

fn invalid(msg: impl Into<String>) -> PatternFileError {
    PatternFileError::Invalid(msg.into())
}

fn harmonics_from_records(
    order: usize,
    records: &[HarmonicRecord],
) -> Result<Pattern, PatternFileError> {
    let tracks = track_count(order);
    let mut by_freq: BTreeMap<u64, Vec<Option<Complex64>>> = BTreeMap::new();
    for (n, &(degree, ord, f, re, im)) in records.iter().enumerate() {
        let degree = degree as usize;
        if degree > order || ord.unsigned_abs() as usize > degree {
            return Err(invalid(format!(
                "coefficients[{n}]: (degree {degree}, order {ord}) is outside order {order}"
            )));
        }
        if !(f.is_finite() && f >= 0.0) {
            return Err(invalid(format!("coefficients[{n}]: bad frequency {f}")));
        }
        let slot = &mut by_freq
            .entry(f.to_bits())
            .or_insert_with(|| vec![None; tracks])[track_index(degree, ord)];
        if slot.replace(Complex64::new(re, im)).is_some() {
            return Err(invalid(format!(
                "coefficients[{n}]: duplicate (degree {degree}, order {ord}) at {f} Hz"
            )));
        }
    }
    let mut freqs = Vec::with_capacity(by_freq.len());
    let mut sets = Vec::with_capacity(by_freq.len());
    // Non-negative f64 bit patterns sort like the values.
    for (bits, set) in by_freq {
        let f = f64::from_bits(bits);
        let set: Option<Vec<Complex64>> = set.into_iter().collect();
        let set = set.ok_or_else(|| invalid(format!("missing coefficient tracks at {f} Hz")))?;
        freqs.push(f);
        sets.push(set);
    }
    let grid = FrequencyGrid::new(freqs).map_err(|e| invalid(e.to_string()))?;
    HarmonicPattern::new(order, grid, sets)
        .map(Pattern::SphericalHarmonics)
        .map_err(|e| invalid(e.to_string()))
}

fn samples_from_records(records: &[SampleRecord]) -> Result<Pattern, PatternFileError> {
    let mut dir_keys: Vec<(u64, u64)> = Vec::new();
    let mut freq_keys: BTreeMap<u64, ()> = BTreeMap::new();
    let mut values: BTreeMap<(usize, u64), Complex64> = BTreeMap::new();
    for (n, &(theta, phi, f, re, im)) in records.iter().enumerate() {
        if !(theta.is_finite() && phi.is_finite() && (0.0..=180.0).contains(&theta)) {
            return Err(invalid(format!(
                "samples[{n}]: bad direction ({theta}, {phi})"
            )));
        }
        if !(f.is_finite() && f >= 0.0) {
            return Err(invalid(format!("samples[{n}]: bad frequency {f}")));
        }
        let key = (theta.to_bits(), phi.to_bits());
        let d = match dir_keys.iter().position(|k| *k == key) {
            Some(d) => d,
            None => {
                dir_keys.push(key);
                dir_keys.len() - 1
            }
        };
        freq_keys.insert(f.to_bits(), ());
        if values
            .insert((d, f.to_bits()), Complex64::new(re, im))
            .is_some()
        {
            return Err(invalid(format!("samples[{n}]: duplicate sample")));
        }
    }
    if dir_keys.is_empty() {
        return Err(invalid("sampled grid has no samples"));
    }
    let mut responses = Vec::with_capacity(freq_keys.len());
    for &bits in freq_keys.keys() {
        let row = (0..dir_keys.len())
            .map(|d| {
                values.get(&(d, bits)).copied().ok_or_else(|| {
                    let (t, p) = dir_keys[d];
                    invalid(format!(
                        "direction ({}, {}) has no sample at {} Hz",
                        f64::from_bits(t),
                        f64::from_bits(p),
                        f64::from_bits(bits)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        responses.push(row);
    }
    let directions = dir_keys
        .iter()
        .map(|&(t, p)| SampleDirection {
            theta: f64::from_bits(t).to_radians(),
            phi: f64::from_bits(p).to_radians(),
        })
        .collect();
    let grid = FrequencyGrid::new(freq_keys.keys().map(|&b| f64::from_bits(b)).collect())
        .map_err(|e| invalid(e.to_string()))?;
    SampledPattern::new(directions, grid, responses)
        .map(Pattern::SampledGrid)
        .map_err(|e| invalid(e.to_string()))
}

pub fn parse_pattern(text: &str) -> Result<Pattern, PatternFileError> {
    let doc: PatternDoc =
        toml::from_str(text).map_err(|e| PatternFileError::Parse(e.to_string()))?;
    match doc {
        PatternDoc::Omnidirectional {} => Ok(Pattern::Omnidirectional),
        PatternDoc::Dipole {} => Ok(Pattern::Dipole),
        PatternDoc::Cardioid {} => Ok(Pattern::Cardioid),
        PatternDoc::Supercardioid {} => Ok(Pattern::Supercardioid),
        PatternDoc::Speaker {} => Ok(Pattern::SimplifiedSpeaker),
        PatternDoc::SphericalHarmonics {
            order,
            coefficients,
        } => harmonics_from_records(order, &coefficients),
        PatternDoc::SampledGrid { samples } => samples_from_records(&samples),
    }
}

pub fn load_pattern(path: &Path) -> Result<Pattern, PatternFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| PatternFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_pattern(&text)
}

pub fn pattern_to_toml(pattern: &Pattern) -> String {
    let doc = match pattern {
        Pattern::Omnidirectional => PatternDoc::Omnidirectional {},
        Pattern::Dipole => PatternDoc::Dipole {},
        Pattern::Cardioid => PatternDoc::Cardioid {},
        Pattern::Supercardioid => PatternDoc::Supercardioid {},
        Pattern::SimplifiedSpeaker => PatternDoc::Speaker {},
        Pattern::SphericalHarmonics(sh) => {
            let mut out = format!(
                "kind = \"spherical_harmonics\"\norder = {}\ncoefficients = [\n",
                sh.order()
            );
            for (&f, set) in sh.grid().as_slice().iter().zip(sh.coefficients()) {
                for degree in 0..=sh.order() {
                    for ord in -(degree as i32)..=(degree as i32) {
                        let c = set[track_index(degree, ord)];
                        out.push_str(&format!(
                            "    [{degree}, {ord}, {:?}, {:?}, {:?}],\n",
                            f, c.re, c.im
                        ));
                    }
                }
            }
            out.push_str("]\n");
            return out;
        }
        Pattern::SampledGrid(grid) => {
            let mut out = String::from("kind = \"sampled_grid\"\nsamples = [\n");
            for (d, dir) in grid.directions().iter().enumerate() {
                for (&f, row) in grid.grid().as_slice().iter().zip(grid.responses()) {
                    let c = row[d];
                    out.push_str(&format!(
                        "    [{:?}, {:?}, {:?}, {:?}, {:?}],\n",
                        dir.theta.to_degrees(),
                        dir.phi.to_degrees(),
                        f,
                        c.re,
                        c.im
                    ));
                }
            }
            out.push_str("]\n");
            return out;
        }
    };
    toml::to_string(&doc).expect("pattern documents always serialize")
}
