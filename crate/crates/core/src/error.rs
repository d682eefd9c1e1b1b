use thiserror::Error;

/// Errors raised by the simulation primitives.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid room: {0}")]
    InvalidRoom(String),

    #[error("position ({x}, {y}, {z}) is not strictly inside the room")]
    OutsideRoom { x: f64, y: f64, z: f64 },

    #[error("image source coincides with the sensor")]
    DegeneratePath,

    #[error("anchor point coincides with the endpoint position")]
    CoincidentAnchor,

    #[error("x-axis anchor is parallel to the z-axis; cannot build a frame")]
    DegenerateAnchor,

    #[error("projection axis must be non-zero")]
    ZeroAxis,

    #[error("direction vector must be non-zero")]
    ZeroDirection,

    #[error("spherical harmonic order {order} exceeds degree {degree}")]
    InvalidHarmonic { degree: usize, order: i32 },

    #[error("Legendre argument {0} is outside [-1, 1]")]
    LegendreDomain(f64),

    #[error("frequency {frequency} Hz is outside [0, {nyquist}] Hz")]
    FrequencyOutOfRange { frequency: f64, nyquist: f64 },

    #[error("speaker directivity order is undefined at {0} Hz")]
    DirectivityOrder(f64),

    #[error("delay must be non-negative, got {0}")]
    NegativeDelay(f64),

    #[error("spectrum is not conjugate symmetric at bin {0}")]
    NotConjugateSymmetric(usize),

    #[error("invalid tap parameters: {0}")]
    InvalidTaps(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid render configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
