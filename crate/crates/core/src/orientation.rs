//! Anchor-point coordinate frames and orientation angles.
//!
//! A directed endpoint (a source or a sensor) is described by its position
//! and two anchor points. The z-axis (front direction) points from the
//! z-anchor towards the position, the x-axis from the x-anchor towards the
//! position. Image sources get their frames by mirroring the anchors
//! alongside the source position, which is what orients every virtual
//! source without any per-image bookkeeping.

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::geometry::{mirror_point, ImageIndex, RoomSpec, Vec3};

/// Below this `sin(theta)` the azimuth is undefined and fixed to zero.
const ZENITH_EPS: f64 = 1e-12;

/// Relative norm below which the projected x-axis counts as collapsed.
const COLLAPSE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedEndpoint {
    pub position: Vec3,
    pub z_anchor: Vec3,
    pub x_anchor: Vec3,
}

impl DirectedEndpoint {
    /// Builds an endpoint, rejecting anchors that cannot define a frame.
    pub fn new(position: Vec3, z_anchor: Vec3, x_anchor: Vec3) -> Result<Self> {
        let ep = DirectedEndpoint {
            position,
            z_anchor,
            x_anchor,
        };
        frame_from_anchors(&ep)?;
        Ok(ep)
    }

    /// The same endpoint seen in the image room selected by `index`.
    pub fn mirrored(&self, index: &ImageIndex, room: &RoomSpec) -> DirectedEndpoint {
        DirectedEndpoint {
            position: mirror_point(&self.position, index, room),
            z_anchor: mirror_anchor(&self.z_anchor, index, room),
            x_anchor: mirror_anchor(&self.x_anchor, index, room),
        }
    }

    /// Unnormalized front direction `r - a_z`.
    pub fn front(&self) -> Vec3 {
        self.position - self.z_anchor
    }
}

/// Right-handed orthonormal basis `(i, j, k)` with `j = k x i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub i: Vec3,
    pub j: Vec3,
    pub k: Vec3,
}

/// Cosines and sines of the elevation and azimuth of a direction expressed
/// in a local frame. `sin_theta` is never negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub cos_phi: f64,
    pub sin_phi: f64,
}

impl Orientation {
    /// Orientation from explicit angles, `theta` in `[0, pi]`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Orientation {
            cos_theta: theta.cos(),
            sin_theta: theta.sin().abs(),
            cos_phi: phi.cos(),
            sin_phi: phi.sin(),
        }
    }

    pub fn theta(&self) -> f64 {
        self.sin_theta.atan2(self.cos_theta)
    }

    /// Azimuth in `[0, 2 pi)`.
    pub fn phi(&self) -> f64 {
        let phi = self.sin_phi.atan2(self.cos_phi);
        if phi < 0.0 {
            phi + std::f64::consts::TAU
        } else {
            phi
        }
    }

    pub fn vector(&self) -> Vec3 {
        orientation_vector(self)
    }
}

/// Cross-product matrix: `skew_matrix(k) * v == k.cross(&v)`.
pub fn skew_matrix(k: &Vec3) -> Matrix3<f64> {
    Matrix3::new(
        0.0, -k.z, k.y, //
        k.z, 0.0, -k.x, //
        -k.y, k.x, 0.0,
    )
}

/// Orthogonal projector onto the plane normal to `k`.
pub fn projection_matrix(k: &Vec3) -> Result<Matrix3<f64>> {
    let kk = k.dot(k);
    if kk == 0.0 || !kk.is_finite() {
        return Err(Error::ZeroAxis);
    }
    Ok(Matrix3::identity() - (k * k.transpose()) / kk)
}

/// Builds the endpoint's frame. The raw x-axis is orthogonalized against
/// the front direction, so the anchors need not be exactly perpendicular.
pub fn frame_from_anchors(ep: &DirectedEndpoint) -> Result<Frame> {
    let raw_k = ep.position - ep.z_anchor;
    let raw_i = ep.position - ep.x_anchor;
    let (k_norm, i_norm) = (raw_k.norm(), raw_i.norm());
    if k_norm == 0.0 || i_norm == 0.0 {
        return Err(Error::CoincidentAnchor);
    }
    let k = raw_k / k_norm;
    let projected = projection_matrix(&k)? * raw_i;
    let p_norm = projected.norm();
    if !(p_norm >= COLLAPSE_EPS * i_norm) {
        return Err(Error::DegenerateAnchor);
    }
    let i = projected / p_norm;
    let j = skew_matrix(&k) * i;
    Ok(Frame { i, j, k })
}

/// Image of an anchor point; identical to mirroring the source itself.
pub fn mirror_anchor(anchor: &Vec3, index: &ImageIndex, room: &RoomSpec) -> Vec3 {
    mirror_point(anchor, index, room)
}

/// Angles of the unit direction `toward` in `frame`.
fn look(frame: &Frame, toward: &Vec3) -> Result<Orientation> {
    let t_norm = toward.norm();
    if t_norm == 0.0 || !t_norm.is_finite() {
        return Err(Error::ZeroDirection);
    }
    let cos_theta = (toward.dot(&frame.k) / (t_norm * frame.k.norm())).clamp(-1.0, 1.0);
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    if sin_theta < ZENITH_EPS {
        return Ok(Orientation {
            cos_theta,
            sin_theta,
            cos_phi: 1.0,
            sin_phi: 0.0,
        });
    }
    let proj = projection_matrix(&frame.k)? * toward;
    let planar = toward.dot(&proj).max(0.0).sqrt();
    if planar == 0.0 {
        return Ok(Orientation {
            cos_theta,
            sin_theta,
            cos_phi: 1.0,
            sin_phi: 0.0,
        });
    }
    let cos_phi = frame.i.dot(&proj) / (planar * frame.i.norm());
    let sin_phi = frame.j.dot(&proj) / (planar * frame.j.norm());
    // Renormalize away the last-ulp drift so cos^2 + sin^2 == 1.
    let r = cos_phi.hypot(sin_phi);
    Ok(Orientation {
        cos_theta,
        sin_theta,
        cos_phi: cos_phi / r,
        sin_phi: sin_phi / r,
    })
}

/// Orientation of the sensor as seen from an image source with frame
/// `frame`, where `direction` is `r_n - r_mic`. The source looks along
/// `-direction`.
pub fn source_orientation(frame: &Frame, direction: &Vec3) -> Result<Orientation> {
    look(frame, &(-direction))
}

/// Orientation of the image source `r_n` as seen by the sensor, where
/// `direction` is `r_n - r_mic`.
pub fn sensor_orientation(frame: &Frame, direction: &Vec3) -> Result<Orientation> {
    look(frame, direction)
}

/// `(sin t cos p, sin t sin p, cos t)`.
pub fn orientation_vector(o: &Orientation) -> Vec3 {
    Vec3::new(
        o.sin_theta * o.cos_phi,
        o.sin_theta * o.sin_phi,
        o.cos_theta,
    )
}
