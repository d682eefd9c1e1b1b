//! Room impulse responses for directional sources and directional sensors.
//!
//! Builds on the classical shoebox image-source model. Each source and
//! sensor carries two anchor points that fix its local frame; mirroring
//! the anchors with the source orients every image source, which lets the
//! renderer evaluate frequency-dependent radiation and directivity
//! patterns per image and embed them, together with the fractional
//! propagation delay, in a short FIR.
//!
//! ```no_run
//! use anchor_rir::{
//!     render, DirectedEndpoint, Pattern, RenderConfig, RoomSpec, Transducer, Vec3,
//! };
//!
//! let room = RoomSpec::new([4.0, 4.0, 4.0], [0.96, 0.8, 0.96, 0.9, 0.5, 0.5], 340.0, 16000.0)?;
//! let talker = Transducer::new(
//!     DirectedEndpoint::new(
//!         Vec3::new(3.0, 3.0, 1.0),
//!         Vec3::new(3.1, 3.1, 1.0),
//!         Vec3::new(2.9, 3.1, 1.0),
//!     )?,
//!     Pattern::SimplifiedSpeaker,
//! );
//! let mic = Transducer::new(
//!     DirectedEndpoint::new(
//!         Vec3::new(1.5, 1.5, 1.0),
//!         Vec3::new(1.4, 1.4, 1.0),
//!         Vec3::new(1.6, 1.4, 1.0),
//!     )?,
//!     Pattern::Cardioid,
//! );
//! let h = render(&room, &talker, &mic, &RenderConfig::new([8, 8, 8], 2, 2048))?;
//! println!("peak {}", h.peak());
//! # Ok::<(), anchor_rir::Error>(())
//! ```

// `!(x >= y)` comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod delay;
pub mod error;
pub mod geometry;
pub mod orientation;
pub mod output;
pub mod patterns;
pub mod renderer;
pub mod scene;

pub use error::{Error, Result};
pub use geometry::{ImageIndex, ImageSource, RoomSpec, Vec3};
pub use orientation::{DirectedEndpoint, Frame, Orientation};
pub use patterns::Pattern;
pub use renderer::{render, render_with_workers, ImpulseResponse, RenderConfig, Transducer};
