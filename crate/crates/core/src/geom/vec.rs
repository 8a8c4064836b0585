use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// A 3-vector of `f64` coordinates. Also used for points; the unit-ball
/// radius is the length unit throughout the crate.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Points and vectors share one representation.
pub type Point3 = Vec3;

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    #[inline]
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn dist(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn dist_sq(self, other: Vec3) -> f64 {
        (self - other).norm_sq()
    }

    /// Unit vector in the same direction, or `None` for a (near-)zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n <= f64::EPSILON * 16.0 {
            None
        } else {
            Some(self / n)
        }
    }

    /// Unit vector; panics on a zero vector. Use only where a nonzero norm
    /// is guaranteed by construction.
    pub fn unit(self) -> Vec3 {
        self.normalized().expect("unit() called on zero vector")
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn approx_eq(self, other: Vec3, eps: f64) -> bool {
        self.dist(other) <= eps
    }

    /// Angle between two vectors in [0, pi]. Inputs need not be unit.
    pub fn angle_to(self, other: Vec3) -> f64 {
        let d = self.norm() * other.norm();
        if d == 0.0 {
            return 0.0;
        }
        (self.dot(other) / d).clamp(-1.0, 1.0).acos()
    }

    /// Some unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthonormal(self) -> Vec3 {
        // Cross with the coordinate axis least aligned with self.
        let a = self.x.abs();
        let b = self.y.abs();
        let c = self.z.abs();
        let axis = if a <= b && a <= c {
            Vec3::new(1.0, 0.0, 0.0)
        } else if b <= c {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        self.cross(axis).unit()
    }

    /// Component of `self` orthogonal to the unit vector `n`.
    #[inline]
    pub fn reject_from_unit(self, n: Vec3) -> Vec3 {
        self - n * self.dot(n)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12}, {:.12}, {:.12})", self.x, self.y, self.z)
    }
}

/// Centroid of a nonempty point set.
pub fn centroid(points: &[Point3]) -> Point3 {
    let mut acc = Vec3::ZERO;
    for p in points {
        acc += *p;
    }
    acc / points.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_is_orthogonal() {
        let a = Vec3::new(1.0, 2.0, 3.0);
        let b = Vec3::new(-2.0, 0.5, 4.0);
        let c = a.cross(b);
        assert!(c.dot(a).abs() < 1e-12);
        assert!(c.dot(b).abs() < 1e-12);
    }

    #[test]
    fn any_orthonormal_is_unit_and_orthogonal() {
        for v in [
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, -3.0, 0.0),
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(-0.3, 0.2, 5.0),
        ] {
            let u = v.any_orthonormal();
            assert!((u.norm() - 1.0).abs() < 1e-12);
            assert!(u.dot(v).abs() < 1e-12 * v.norm().max(1.0));
        }
    }
}
