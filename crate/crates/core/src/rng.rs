//! Small deterministic PRNG used by the instance generators and tests.
//! SplitMix64 is stable across platforms and needs no external crate.

use crate::geom::{Isometry, Mat3, Point3, Tolerance, Vec3};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn point_in_cube(&mut self, half_side: f64) -> Point3 {
        Point3::new(
            self.range(-half_side, half_side),
            self.range(-half_side, half_side),
            self.range(-half_side, half_side),
        )
    }

    /// Uniform direction on the unit sphere.
    pub fn unit_vector(&mut self) -> Vec3 {
        let z = self.range(-1.0, 1.0);
        let phi = self.range(0.0, 2.0 * std::f64::consts::PI);
        let r = (1.0 - z * z).max(0.0).sqrt();
        Vec3::new(r * phi.cos(), r * phi.sin(), z)
    }

    /// Uniform random rotation (or roto-reflection when `reflect`), with a
    /// translation drawn from a cube of half-side 2.
    pub fn random_isometry(&mut self, reflect: bool, tol: &Tolerance) -> Isometry {
        let a = self.unit_vector();
        let mut b = self.unit_vector();
        // Gram-Schmidt; retry hidden in the orthogonal completion.
        b = (b - a * b.dot(a))
            .normalized()
            .unwrap_or_else(|| a.any_orthonormal());
        let c = a.cross(b);
        let mut rot = Mat3::from_cols(a, b, c);
        if reflect {
            for i in 0..3 {
                rot.m[i][2] = -rot.m[i][2];
            }
        }
        Isometry::new(rot, self.point_in_cube(2.0), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut a = SplitMix64::new(123);
        let mut b = SplitMix64::new(123);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn unit_vectors_are_unit() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..100 {
            assert!((rng.unit_vector().norm() - 1.0).abs() < 1e-12);
        }
    }
}
