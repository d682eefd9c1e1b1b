//! Shoebox room description and image-source enumeration.
//!
//! Images are indexed by a parity bit and a signed shift per axis. The
//! position of image `(p, q)` along axis `d` is `(-1)^p * s_d + 2 q L_d`,
//! where `s` is the real source position and `L` the room edge length.

use nalgebra::Vector3;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Six wall reflection coefficients, ordered `x0, x1, y0, y1, z0, z1`.
///
/// The `*0` walls are the planes at coordinate zero, `*1` the planes at
/// the far edge of the room.
pub type Reflections = [f64; 6];

#[derive(Debug, Clone, PartialEq)]
pub struct RoomSpec {
    /// Edge lengths `[L_x, L_y, L_z]` in metres.
    pub dimensions: [f64; 3],
    pub reflections: Reflections,
    /// Speed of sound in m/s.
    pub speed_of_sound: f64,
    /// Sampling rate in Hz.
    pub sample_rate: f64,
}

impl RoomSpec {
    pub fn new(
        dimensions: [f64; 3],
        reflections: Reflections,
        speed_of_sound: f64,
        sample_rate: f64,
    ) -> Result<Self> {
        let room = RoomSpec {
            dimensions,
            reflections,
            speed_of_sound,
            sample_rate,
        };
        room.validate()?;
        Ok(room)
    }

    pub fn validate(&self) -> Result<()> {
        for (axis, &len) in ["x", "y", "z"].iter().zip(&self.dimensions) {
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::InvalidRoom(format!(
                    "edge length L_{axis} must be positive, got {len}"
                )));
            }
        }
        for (i, &beta) in self.reflections.iter().enumerate() {
            if !(0.0..=1.0).contains(&beta) {
                return Err(Error::InvalidRoom(format!(
                    "reflection coefficient #{i} must lie in [0, 1], got {beta}"
                )));
            }
        }
        if !(self.speed_of_sound.is_finite() && self.speed_of_sound > 0.0) {
            return Err(Error::InvalidRoom(format!(
                "speed of sound must be positive, got {}",
                self.speed_of_sound
            )));
        }
        if !(self.sample_rate.is_finite() && self.sample_rate > 0.0) {
            return Err(Error::InvalidRoom(format!(
                "sampling rate must be positive, got {}",
                self.sample_rate
            )));
        }
        Ok(())
    }

    /// True when every coordinate lies strictly between the walls.
    /// Points on a wall are rejected.
    pub fn contains(&self, p: &Vec3) -> bool {
        (0..3).all(|d| p[d] > 0.0 && p[d] < self.dimensions[d])
    }

    pub fn ensure_inside(&self, p: &Vec3) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutsideRoom {
                x: p.x,
                y: p.y,
                z: p.z,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ImageIndex {
    /// `[p_x, p_y, p_z]`, each 0 or 1.
    pub parity: [u8; 3],
    /// `[q_x, q_y, q_z]`.
    pub shift: [i32; 3],
}

impl ImageIndex {
    /// The real source.
    pub const ZERO: ImageIndex = ImageIndex {
        parity: [0; 3],
        shift: [0; 3],
    };

    pub fn new(parity: [u8; 3], shift: [i32; 3]) -> Self {
        debug_assert!(parity.iter().all(|&p| p <= 1));
        ImageIndex { parity, shift }
    }

    pub fn is_real_source(&self) -> bool {
        *self == Self::ZERO
    }

    /// Per-axis sign `(-1)^p`.
    pub fn signs(&self) -> Vec3 {
        Vec3::from_fn(|d, _| if self.parity[d] == 0 { 1.0 } else { -1.0 })
    }
}

/// Mirrors a point of the real room into the image room selected by `index`.
///
/// Applied to the source position this gives the image position; applied
/// to an anchor it gives the anchor's image.
pub fn mirror_point(point: &Vec3, index: &ImageIndex, room: &RoomSpec) -> Vec3 {
    let signs = index.signs();
    Vec3::from_fn(|d, _| signs[d] * point[d] + 2.0 * f64::from(index.shift[d]) * room.dimensions[d])
}

/// Number of images produced by [`enumerate_images`] for the given orders.
pub fn image_count(orders: [u32; 3]) -> usize {
    orders
        .iter()
        .map(|&q| 2 * q as usize + 1)
        .product::<usize>()
        * 8
}

/// Lists every image index with `|q_d| <= orders[d]`, lexicographically
/// ordered over `(q_x, q_y, q_z, p_x, p_y, p_z)`, together with its position.
pub fn enumerate_images(
    room: &RoomSpec,
    source: &Vec3,
    orders: [u32; 3],
) -> Result<Vec<(ImageIndex, Vec3)>> {
    room.ensure_inside(source)?;
    let [qx, qy, qz] = orders.map(|q| q as i32);
    let mut out = Vec::with_capacity(image_count(orders));
    for sx in -qx..=qx {
        for sy in -qy..=qy {
            for sz in -qz..=qz {
                for px in 0..2u8 {
                    for py in 0..2u8 {
                        for pz in 0..2u8 {
                            let index = ImageIndex::new([px, py, pz], [sx, sy, sz]);
                            out.push((index, mirror_point(source, &index, room)));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Product of wall reflection coefficients met along the image's path.
pub fn reflection_product(index: &ImageIndex, reflections: &Reflections) -> f64 {
    (0..3)
        .map(|d| {
            let q = index.shift[d];
            let p = i32::from(index.parity[d]);
            let near = reflections[2 * d].powi((q - p).abs());
            let far = reflections[2 * d + 1].powi(q.abs());
            near * far
        })
        .product()
}

/// Line-of-sight geometry between an image and the sensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGeometry {
    /// `r_n - r_mic`, pointing from the sensor to the image.
    pub direction: Vec3,
    pub distance: f64,
    /// Propagation delay in seconds.
    pub delay: f64,
}

pub fn geometry_of(image: &Vec3, mic: &Vec3, speed_of_sound: f64) -> Result<PathGeometry> {
    let direction = image - mic;
    let distance = direction.norm();
    if distance == 0.0 {
        return Err(Error::DegeneratePath);
    }
    Ok(PathGeometry {
        direction,
        distance,
        delay: distance / speed_of_sound,
    })
}

/// One image source as seen from a particular sensor position.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageSource {
    pub index: ImageIndex,
    pub position: Vec3,
    pub reflection: f64,
    pub path: PathGeometry,
}

impl ImageSource {
    pub fn new(index: ImageIndex, position: Vec3, room: &RoomSpec, mic: &Vec3) -> Result<Self> {
        Ok(ImageSource {
            index,
            position,
            reflection: reflection_product(&index, &room.reflections),
            path: geometry_of(&position, mic, room.speed_of_sound)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cube() -> RoomSpec {
        RoomSpec::new(
            [4.0, 4.0, 4.0],
            [0.96, 0.8, 0.96, 0.9, 0.5, 0.5],
            340.0,
            16000.0,
        )
        .unwrap()
    }

    #[test]
    fn first_order_enumeration_has_216_images() {
        let images = enumerate_images(&cube(), &Vec3::new(3.0, 3.0, 1.0), [1, 1, 1]).unwrap();
        assert_eq!(images.len(), 216);
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let images = enumerate_images(&cube(), &Vec3::new(3.0, 3.0, 1.0), [1, 2, 1]).unwrap();
        let keys: Vec<_> = images.iter().map(|(i, _)| (i.shift, i.parity)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(images[0].0, ImageIndex::new([0, 0, 0], [-1, -2, -1]));
    }

    #[test]
    fn identity_and_single_mirror() {
        let room = cube();
        let s = Vec3::new(3.0, 3.0, 1.0);
        assert_eq!(mirror_point(&s, &ImageIndex::ZERO, &room), s);
        let px = ImageIndex::new([1, 0, 0], [0, 0, 0]);
        assert_eq!(mirror_point(&s, &px, &room), Vec3::new(-3.0, 3.0, 1.0));
    }

    #[test]
    fn source_outside_or_on_wall_is_rejected() {
        let room = cube();
        for bad in [
            Vec3::new(5.0, 1.0, 1.0),
            Vec3::new(0.0, 1.0, 1.0),
            Vec3::new(1.0, 4.0, 1.0),
        ] {
            assert!(matches!(
                enumerate_images(&room, &bad, [1, 1, 1]),
                Err(Error::OutsideRoom { .. })
            ));
        }
    }

    #[test]
    fn reflection_product_examples() {
        let betas = [0.96, 0.8, 0.96, 0.9, 0.5, 0.5];
        assert_eq!(reflection_product(&ImageIndex::ZERO, &betas), 1.0);
        let idx = ImageIndex::new([1, 0, 0], [1, 0, 0]);
        assert_eq!(reflection_product(&idx, &betas), 0.8);
        let idx = ImageIndex::new([1, 1, 0], [-2, 3, 1]);
        assert_eq!(reflection_product(&idx, &[1.0; 6]), 1.0);
    }

    #[test]
    fn direct_path_geometry() {
        let g = geometry_of(&Vec3::new(3.0, 3.0, 1.0), &Vec3::new(1.5, 1.5, 1.0), 340.0).unwrap();
        assert_eq!(g.direction, Vec3::new(1.5, 1.5, 0.0));
        assert!((g.distance - 2.121_320_343_559_642).abs() < 1e-12);
        assert!((g.delay - 6.2392e-3).abs() < 1e-7);
        let p = Vec3::new(1.0, 2.0, 3.0);
        assert_eq!(geometry_of(&p, &p, 340.0), Err(Error::DegeneratePath));
    }

    #[test]
    fn invalid_rooms() {
        assert!(RoomSpec::new([0.0, 1.0, 1.0], [0.5; 6], 340.0, 16000.0).is_err());
        assert!(RoomSpec::new(
            [1.0, 1.0, 1.0],
            [1.2, 0.5, 0.5, 0.5, 0.5, 0.5],
            340.0,
            16000.0
        )
        .is_err());
        assert!(RoomSpec::new(
            [1.0, 1.0, 1.0],
            [-0.1, 0.5, 0.5, 0.5, 0.5, 0.5],
            340.0,
            16000.0
        )
        .is_err());
        assert!(RoomSpec::new([1.0, 1.0, 1.0], [0.5; 6], 0.0, 16000.0).is_err());
        assert!(RoomSpec::new([1.0, 1.0, 1.0], [0.5; 6], 340.0, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn count_matches_formula(qx in 0u32..=4, qy in 0u32..=4, qz in 0u32..=4) {
            let images = enumerate_images(&cube(), &Vec3::new(1.0, 2.0, 3.0), [qx, qy, qz]).unwrap();
            let expected = 8 * (2 * qx + 1) * (2 * qy + 1) * (2 * qz + 1);
            prop_assert_eq!(images.len(), expected as usize);
            prop_assert_eq!(image_count([qx, qy, qz]), expected as usize);
        }

        #[test]
        fn single_wall_mirror_is_an_involution(
            x in 0.01f64..3.99, y in 0.01f64..3.99, z in 0.01f64..3.99, axis in 0usize..3,
        ) {
            let room = cube();
            let mut parity = [0u8; 3];
            parity[axis] = 1;
            let idx = ImageIndex::new(parity, [0; 3]);
            let p = Vec3::new(x, y, z);
            let twice = mirror_point(&mirror_point(&p, &idx, &room), &idx, &room);
            prop_assert_eq!(twice, p);
        }

        #[test]
        fn reflection_product_is_monotone_in_shift(
            betas in prop::array::uniform6(0.01f64..0.99),
            parity in prop::array::uniform3(0u8..2),
            shift in prop::array::uniform3(0i32..5),
            axis in 0usize..3,
        ) {
            // Grow |q| along one axis in the direction away from the parity offset.
            let mut near = ImageIndex::new(parity, shift);
            let mut far = near;
            for idx in [&mut near, &mut far] {
                idx.shift[axis] = idx.shift[axis].max(i32::from(parity[axis]));
            }
            far.shift[axis] += 1;
            prop_assert!(reflection_product(&far, &betas) <= reflection_product(&near, &betas));

            let mut neg_near = near;
            neg_near.shift[axis] = -shift[axis];
            let mut neg_far = neg_near;
            neg_far.shift[axis] -= 1;
            prop_assert!(reflection_product(&neg_far, &betas) <= reflection_product(&neg_near, &betas));
        }
    }
}
