//! Impulse-response rendering.
//!
//! Every image contributes `beta_n / (4 pi d_n) * window * taps` around its
//! rounded delay. Images with all `|q_d| <= Q_max` are rendered with the
//! full directional pipeline; the rest fall back to closed-form
//! omnidirectional taps, dropping both source and sensor patterns.
//!
//! Per-image work runs in parallel, but contributions are always summed
//! serially in enumeration order, so output is bit-identical for any
//! worker count.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::delay::{
    anti_alias_window, default_fft_size, omni_taps, pattern_taps, split_delay, TapVector,
    DEFAULT_HALF_LENGTH,
};
use crate::error::{Error, Result};
use crate::geometry::{enumerate_images, ImageIndex, ImageSource, RoomSpec};
use crate::orientation::{
    frame_from_anchors, sensor_orientation, source_orientation, DirectedEndpoint, Frame,
};
use crate::patterns::Pattern;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    /// Maximum `|q|` per axis: `[Q_x, Q_y, Q_z]`.
    pub reflection_order: [u32; 3],
    /// Directional cutoff `Q_max`; negative renders every image as omnidirectional.
    pub directional_order: i32,
    /// Half length `D` of per-image taps.
    pub half_length: usize,
    /// Centering `D_e >= D` of the inverse transform.
    pub centering: usize,
    /// Output length `L_h` in samples.
    pub length: usize,
    /// DFT grid size used for directional taps.
    pub fft_size: usize,
}

impl RenderConfig {
    /// Config with `D = 32`, `D_e = D` and the default DFT size.
    pub fn new(reflection_order: [u32; 3], directional_order: i32, length: usize) -> Self {
        RenderConfig {
            reflection_order,
            directional_order,
            half_length: DEFAULT_HALF_LENGTH,
            centering: DEFAULT_HALF_LENGTH,
            length,
            fft_size: default_fft_size(DEFAULT_HALF_LENGTH),
        }
    }

    /// Sets `D`, resetting `D_e` and the DFT size to their defaults.
    pub fn with_half_length(mut self, half_length: usize) -> Self {
        self.half_length = half_length;
        self.centering = half_length;
        self.fft_size = default_fft_size(half_length);
        self
    }

    pub fn with_centering(mut self, centering: usize) -> Self {
        self.centering = centering;
        self
    }

    pub fn with_fft_size(mut self, fft_size: usize) -> Self {
        self.fft_size = fft_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.length == 0 {
            return bad("impulse response length must be at least 1".into());
        }
        if self.half_length == 0 {
            return bad("half length D must be at least 1".into());
        }
        if self.centering < self.half_length {
            return bad(format!(
                "centering D_e = {} must be at least D = {}",
                self.centering, self.half_length
            ));
        }
        let taps = 2 * self.half_length + 1;
        if self.fft_size < 4 * taps {
            return bad(format!(
                "DFT size {} must be at least 4 (2D + 1) = {}",
                self.fft_size,
                4 * taps
            ));
        }
        if self.centering + self.half_length >= self.fft_size {
            return bad(format!(
                "D_e + D = {} must be below the DFT size {}",
                self.centering + self.half_length,
                self.fft_size
            ));
        }
        Ok(())
    }
}

/// A source or sensor: placement plus directivity.
#[derive(Debug, Clone, PartialEq)]
pub struct Transducer {
    pub pose: DirectedEndpoint,
    pub pattern: Pattern,
}

impl Transducer {
    pub fn new(pose: DirectedEndpoint, pattern: Pattern) -> Self {
        Transducer { pose, pattern }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImpulseResponse {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
}

impl ImpulseResponse {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    pub fn rms(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        (self.samples.iter().map(|s| s * s).sum::<f64>() / self.samples.len() as f64).sqrt()
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s * s).sum()
    }

    /// First sample whose magnitude reaches half the peak.
    pub fn first_arrival(&self) -> Option<usize> {
        let peak = self.peak();
        if peak == 0.0 {
            return None;
        }
        self.samples.iter().position(|s| s.abs() >= 0.5 * peak)
    }
}

/// Whether an image is rendered with the directional pipeline.
pub fn is_directional(index: &ImageIndex, directional_order: i32) -> bool {
    directional_order >= 0
        && index
            .shift
            .iter()
            .all(|q| q.unsigned_abs() <= directional_order as u32)
}

/// Combined source and sensor response `A_n B_n` on the full DFT grid,
/// built conjugate-symmetric from bins `0..=N/2`.
fn combined_spectrum(
    source: &Pattern,
    sensor: &Pattern,
    source_o: &crate::orientation::Orientation,
    sensor_o: &crate::orientation::Orientation,
    sample_rate: f64,
    n: usize,
) -> Result<Vec<Complex64>> {
    let half = n / 2;
    let freqs: Vec<f64> = (0..=half)
        .map(|k| k as f64 * sample_rate / n as f64)
        .collect();
    let b = source.response(source_o, &freqs)?;
    let a = sensor.response(sensor_o, &freqs)?;
    let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..=half {
        spectrum[k] = a[k] * b[k];
    }
    spectrum[0].im = 0.0;
    if n.is_multiple_of(2) {
        spectrum[half].im = 0.0;
    }
    for k in 1..n.div_ceil(2) {
        spectrum[n - k] = spectrum[k].conj();
    }
    Ok(spectrum)
}

/// Directional taps for one image, before windowing and scaling.
pub fn compute_image_taps(
    room: &RoomSpec,
    image: &ImageSource,
    source: &Transducer,
    sensor: &Transducer,
    cfg: &RenderConfig,
) -> Result<TapVector> {
    let sensor_frame = frame_from_anchors(&sensor.pose)?;
    image_taps_with_frame(room, image, source, sensor, &sensor_frame, cfg)
}

fn image_taps_with_frame(
    room: &RoomSpec,
    image: &ImageSource,
    source: &Transducer,
    sensor: &Transducer,
    sensor_frame: &Frame,
    cfg: &RenderConfig,
) -> Result<TapVector> {
    let direction = image.path.direction;
    let frame = frame_from_anchors(&source.pose.mirrored(&image.index, room))?;
    let source_o = source_orientation(&frame, &direction)?;
    let sensor_o = sensor_orientation(sensor_frame, &direction)?;
    let spectrum = combined_spectrum(
        &source.pattern,
        &sensor.pattern,
        &source_o,
        &sensor_o,
        room.sample_rate,
        cfg.fft_size,
    )?;
    let split = split_delay(image.path.delay, room.sample_rate)?;
    pattern_taps(&spectrum, split.fraction, cfg.half_length, cfg.centering)
}

/// Scaled, windowed taps of one image, placed at `start` in the output.
#[derive(Debug, Clone, PartialEq)]
pub struct Contribution {
    pub index: ImageIndex,
    pub directional: bool,
    /// Output sample of `taps[0]`; may be negative.
    pub start: i64,
    pub taps: Vec<f64>,
}

impl Contribution {
    /// Adds the taps to `out`, dropping any that fall outside it.
    pub fn accumulate(&self, out: &mut [f64]) {
        let len = out.len() as i64;
        for (l, &t) in self.taps.iter().enumerate() {
            let at = self.start + l as i64;
            if (0..len).contains(&at) {
                out[at as usize] += t;
            }
        }
    }
}

fn validate_scene(
    room: &RoomSpec,
    source: &Transducer,
    sensor: &Transducer,
    cfg: &RenderConfig,
) -> Result<Frame> {
    room.validate()?;
    cfg.validate()?;
    room.ensure_inside(&source.pose.position)?;
    room.ensure_inside(&sensor.pose.position)?;
    if source.pose.position == sensor.pose.position {
        return Err(Error::DegeneratePath);
    }
    frame_from_anchors(&source.pose)?;
    frame_from_anchors(&sensor.pose)
}

fn contribution_for(
    room: &RoomSpec,
    index: ImageIndex,
    position: crate::geometry::Vec3,
    source: &Transducer,
    sensor: &Transducer,
    sensor_frame: &Frame,
    cfg: &RenderConfig,
) -> Result<Option<Contribution>> {
    let image = ImageSource::new(index, position, room, &sensor.pose.position)?;
    let split = split_delay(image.path.delay, room.sample_rate)?;
    let d = cfg.half_length as i64;
    let start = split.samples - d;
    if start >= cfg.length as i64 || image.reflection == 0.0 {
        return Ok(None);
    }
    let directional = is_directional(&index, cfg.directional_order);
    let taps = if directional {
        image_taps_with_frame(room, &image, source, sensor, sensor_frame, cfg)?
    } else {
        omni_taps(split.fraction, cfg.half_length)
    };
    let window = anti_alias_window(split.fraction, cfg.half_length);
    let scale = image.reflection / (4.0 * PI * image.path.distance);
    Ok(Some(Contribution {
        index,
        directional,
        start,
        taps: taps
            .taps
            .iter()
            .zip(&window)
            .map(|(c, w)| scale * w * c)
            .collect(),
    }))
}

/// Per-image contributions in enumeration order, skipping images that land
/// entirely past the end of the response or carry zero reflection gain.
///
/// `workers` selects the thread count; `None` uses the ambient rayon pool
/// and `Some(1)` runs on the calling thread.
pub fn render_contributions(
    room: &RoomSpec,
    source: &Transducer,
    sensor: &Transducer,
    cfg: &RenderConfig,
    workers: Option<usize>,
) -> Result<Vec<Contribution>> {
    let sensor_frame = validate_scene(room, source, sensor, cfg)?;
    let images = enumerate_images(room, &source.pose.position, cfg.reflection_order)?;
    let one = |(index, pos): &(ImageIndex, crate::geometry::Vec3)| {
        contribution_for(room, *index, *pos, source, sensor, &sensor_frame, cfg)
    };
    let collected: Result<Vec<Option<Contribution>>> = match workers {
        Some(1) => images.iter().map(one).collect(),
        None => images.par_iter().map(one).collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start {n} workers: {e}")))?
            .install(|| images.par_iter().map(one).collect()),
    };
    Ok(collected?.into_iter().flatten().collect())
}

/// Renders the impulse response from `source` to `sensor`.
pub fn render(
    room: &RoomSpec,
    source: &Transducer,
    sensor: &Transducer,
    cfg: &RenderConfig,
) -> Result<ImpulseResponse> {
    render_with_workers(room, source, sensor, cfg, None)
}

pub fn render_with_workers(
    room: &RoomSpec,
    source: &Transducer,
    sensor: &Transducer,
    cfg: &RenderConfig,
    workers: Option<usize>,
) -> Result<ImpulseResponse> {
    let contributions = render_contributions(room, source, sensor, cfg, workers)?;
    let mut samples = vec![0.0; cfg.length];
    for c in &contributions {
        c.accumulate(&mut samples);
    }
    Ok(ImpulseResponse {
        samples,
        sample_rate: room.sample_rate,
    })
}
