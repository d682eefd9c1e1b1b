//! Writers, batch runs and plot data.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geometry::Vec3;
use crate::orientation::Orientation;
use crate::patterns::file::pattern_to_toml;
use crate::patterns::Pattern;
use crate::renderer::{render_with_workers, ImpulseResponse};
use crate::scene::{OutputFormat, Scene};

/// Full-scale target of the optional peak normalization.
pub const NORMALIZE_PEAK: f64 = 0.9;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write WAV {path}: {message}")]
    Wav { path: PathBuf, message: String },
    #[error("{0}")]
    Render(Box<PairFailure>),
    #[error("cannot start {workers} workers: {message}")]
    Workers { workers: usize, message: String },
}

/// A failed (source, microphone) render with the scene coordinates.
#[derive(Debug, Error)]
#[error(
    "render of {source_name} at {source_position:?} -> {microphone} at {microphone_position:?} failed: {error}"
)]
pub struct PairFailure {
    pub source_name: String,
    pub microphone: String,
    pub source_position: [f64; 3],
    pub microphone_position: [f64; 3],
    pub error: crate::Error,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, RunError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

/// One `index,value` row per sample, values in shortest round-trip form.
pub fn write_csv(path: &Path, samples: &[f64]) -> Result<(), RunError> {
    let mut w = create(path)?;
    let res = (|| {
        writeln!(w, "index,value")?;
        for (i, v) in samples.iter().enumerate() {
            writeln!(w, "{i},{v:e}")?;
        }
        w.flush()
    })();
    res.map_err(io_err(path))
}

/// Mono 32-bit float WAV.
pub fn write_wav(path: &Path, samples: &[f64], sample_rate: f64) -> Result<(), RunError> {
    let wav_err = |e: hound::Error| RunError::Wav {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    if !(sample_rate.fract() == 0.0 && sample_rate >= 1.0 && sample_rate <= u32::MAX as f64) {
        return Err(RunError::Wav {
            path: path.to_path_buf(),
            message: format!("sample rate {sample_rate} is not a whole number of Hz"),
        });
    }
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: sample_rate as u32,
        bits_per_sample: 32,
        sample_format: hound::SampleFormat::Float,
    };
    let mut w = hound::WavWriter::new(create(path)?, spec).map_err(wav_err)?;
    for &v in samples {
        w.write_sample(v as f32).map_err(wav_err)?;
    }
    w.finalize().map_err(wav_err)
}

/// Raw little-endian `f64`, no header.
pub fn write_raw(path: &Path, samples: &[f64]) -> Result<(), RunError> {
    let mut w = create(path)?;
    let res = (|| {
        for v in samples {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()
    })();
    res.map_err(io_err(path))
}

pub fn read_raw(bytes: &[u8]) -> Vec<f64> {
    bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect()
}

/// Scale so the absolute peak equals [`NORMALIZE_PEAK`]; all-zero input is
/// returned unchanged with scale 1.
pub fn normalize(samples: &[f64]) -> (Vec<f64>, f64) {
    let peak = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return (samples.to_vec(), 1.0);
    }
    let scale = NORMALIZE_PEAK / peak;
    (samples.iter().map(|v| v * scale).collect(), scale)
}

pub fn write_format(
    format: OutputFormat,
    path: &Path,
    samples: &[f64],
    sample_rate: f64,
) -> Result<(), RunError> {
    match format {
        OutputFormat::Csv => write_csv(path, samples),
        OutputFormat::Wav => write_wav(path, samples, sample_rate),
        OutputFormat::Raw => write_raw(path, samples),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub source: String,
    pub microphone: String,
    pub files: Vec<PathBuf>,
    pub peak: f64,
    pub rms: f64,
    pub first_arrival: Option<usize>,
    /// Factor applied before writing; 1 unless normalization is on.
    pub scale: f64,
}

#[derive(Debug, Clone, Serialize)]
struct ResolvedRender {
    reflection_order: [u32; 3],
    directional_order: i32,
    half_length: usize,
    centering: usize,
    length: usize,
    fft_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    /// SHA-256 over the canonical scene text (without `[output]`) and every
    /// resolved pattern.
    pub input_sha256: String,
    pub parameters: serde_json::Value,
    pub outputs: Vec<PairRecord>,
    pub wall_clock_seconds: f64,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest always serializes")
    }
}

/// Output locations are not inputs and are left out.
pub fn input_hash(scene: &Scene) -> String {
    let mut cfg = scene.config.clone();
    cfg.output = Default::default();
    let mut h = Sha256::new();
    h.update(cfg.to_toml_string().as_bytes());
    for t in scene.sources.iter().chain(&scene.microphones) {
        h.update(t.name.as_bytes());
        h.update(pattern_to_toml(&t.transducer.pattern).as_bytes());
    }
    format!("{:x}", h.finalize())
}

fn parameters(scene: &Scene) -> serde_json::Value {
    let r = &scene.render;
    serde_json::json!({
        "scene": scene.config,
        "render": ResolvedRender {
            reflection_order: r.reflection_order,
            directional_order: r.directional_order,
            half_length: r.half_length,
            centering: r.centering,
            length: r.length,
            fft_size: r.fft_size,
        },
    })
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Thread cap for the whole batch; `None` uses every core.
    pub workers: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub responses: Vec<(String, String, ImpulseResponse)>,
    pub manifest: Manifest,
    pub manifest_path: Option<PathBuf>,
}

/// Renders every (source, microphone) pair, writes each in every requested
/// format and, when the scene names one, the manifest.
pub fn run(scene: &Scene, opts: &RunOptions) -> Result<RunReport, RunError> {
    let started = Instant::now();
    let pairs: Vec<(usize, usize)> = (0..scene.sources.len())
        .flat_map(|s| (0..scene.microphones.len()).map(move |m| (s, m)))
        .collect();
    // inside a dedicated pool `None` inherits it; a cap of 1 must stay serial
    let inner = if opts.workers == Some(1) {
        Some(1)
    } else {
        None
    };
    let render_pair = |&(s, m): &(usize, usize)| {
        let src = &scene.sources[s];
        let mic = &scene.microphones[m];
        render_with_workers(
            &scene.room,
            &src.transducer,
            &mic.transducer,
            &scene.render,
            inner,
        )
        .map_err(|error| {
            RunError::Render(Box::new(PairFailure {
                source_name: src.name.clone(),
                microphone: mic.name.clone(),
                source_position: coords(&src.transducer.pose.position),
                microphone_position: coords(&mic.transducer.pose.position),
                error,
            }))
        })
    };
    let rendered: Result<Vec<ImpulseResponse>, RunError> = match opts.workers {
        Some(1) => pairs.iter().map(render_pair).collect(),
        None => pairs.par_iter().map(render_pair).collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Workers {
                workers: n,
                message: e.to_string(),
            })?
            .install(|| pairs.par_iter().map(render_pair).collect()),
    };
    let rendered = rendered?;

    let dir = scene.output_directory();
    std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let out = &scene.config.output;
    let mut records = Vec::with_capacity(pairs.len());
    let mut responses = Vec::with_capacity(pairs.len());
    for (&(s, m), h) in pairs.iter().zip(rendered) {
        let (sname, mname) = (&scene.sources[s].name, &scene.microphones[m].name);
        let (samples, scale) = if out.normalize {
            normalize(&h.samples)
        } else {
            (h.samples.clone(), 1.0)
        };
        let mut files = Vec::new();
        for &fmt in &out.formats {
            let path = dir.join(format!("{sname}__{mname}.{}", fmt.extension()));
            write_format(fmt, &path, &samples, h.sample_rate)?;
            files.push(path);
        }
        records.push(PairRecord {
            source: sname.clone(),
            microphone: mname.clone(),
            files,
            peak: h.peak(),
            rms: h.rms(),
            first_arrival: h.first_arrival(),
            scale,
        });
        responses.push((sname.clone(), mname.clone(), h));
    }

    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        input_sha256: input_hash(scene),
        parameters: parameters(scene),
        outputs: records,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    let manifest_path = scene.manifest_path();
    if let Some(path) = &manifest_path {
        std::fs::write(path, manifest.to_json()).map_err(io_err(path))?;
    }
    Ok(RunReport {
        responses,
        manifest,
        manifest_path,
    })
}

fn coords(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotRow {
    pub frequency: f64,
    pub theta_deg: f64,
    /// Magnitude of the pattern response.
    pub gain: f64,
    pub re: f64,
    pub im: f64,
}

/// Polar cut through the pattern in the local x-z plane.
///
/// `theta_deg` runs over `[0, 360)`; angles past 180 degrees lie on the
/// `phi = pi` half of the cut.
pub fn emit_pattern_plot(
    pattern: &Pattern,
    frequencies: &[f64],
    resolution_deg: f64,
    sample_rate: f64,
) -> crate::Result<Vec<PlotRow>> {
    if !(resolution_deg > 0.0 && resolution_deg.is_finite()) {
        return Err(crate::Error::InvalidConfig(format!(
            "angular resolution must be positive, got {resolution_deg}"
        )));
    }
    let steps = (360.0 / resolution_deg).round().max(1.0) as usize;
    let mut rows = Vec::with_capacity(steps * frequencies.len());
    for &f in frequencies {
        for s in 0..steps {
            let deg = s as f64 * 360.0 / steps as f64;
            let o = if deg <= 180.0 {
                Orientation::from_angles(deg.to_radians(), 0.0)
            } else {
                Orientation::from_angles((360.0 - deg).to_radians(), std::f64::consts::PI)
            };
            let g = pattern.evaluate(f, sample_rate, &o)?;
            rows.push(PlotRow {
                frequency: f,
                theta_deg: deg,
                gain: g.norm(),
                re: g.re,
                im: g.im,
            });
        }
    }
    Ok(rows)
}

pub fn write_plot_csv(path: &Path, rows: &[PlotRow]) -> Result<(), RunError> {
    let mut w = create(path)?;
    let res = (|| {
        writeln!(w, "frequency_hz,theta_deg,gain,re,im")?;
        for r in rows {
            writeln!(
                w,
                "{},{},{:e},{:e},{:e}",
                r.frequency, r.theta_deg, r.gain, r.re, r.im
            )?;
        }
        w.flush()
    })();
    res.map_err(io_err(path))
}
