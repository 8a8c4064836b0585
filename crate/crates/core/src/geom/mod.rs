//! Numeric kernel: vectors, spheres, tolerance policy, and low-level
//! intersection and registration primitives. All operations are pure
//! functions of their inputs; predicates are floating point with explicit
//! tolerance bands, and inputs inside a band of a degeneracy are rejected
//! rather than silently resolved.

mod angle;
mod caps;
mod isometry;
mod mat;
mod seb;
mod sphere;
mod tolerance;
mod vec;

pub use angle::{center_distance_from_dihedral, dihedral_from_center_distance, edge_circle_radius};
pub use caps::{max_margin_direction, CapConstraint};
pub use isometry::{fit_isometry, Isometry, IsometryFit, Orientation};
pub use mat::{jacobi_eigen_sym3, Mat3};
pub use seb::{max_distance, smallest_enclosing_ball};
pub use sphere::{circumsphere, sphere_triple_intersection, Sphere, TripleIntersection};
pub use tolerance::Tolerance;
pub use vec::{centroid, Point3, Vec3};

use std::fmt;

/// Errors raised by the kernel primitives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeomError {
    /// Three sphere centers are collinear within tolerance; their common
    /// intersection is a circle or empty, not isolated points.
    CollinearCenters,
    /// Four points are affinely dependent within tolerance.
    CoplanarPoints,
    /// A scalar argument is outside its admissible open interval.
    OutOfRange { value: f64 },
    /// No isometry maps the source onto the destination within tolerance.
    NotCongruent { max_residual: f64 },
    /// Correspondence lists differ in length.
    LengthMismatch { left: usize, right: usize },
    /// Too few points for the requested operation.
    TooFewPoints { got: usize, need: usize },
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::CollinearCenters => write!(f, "sphere centers are collinear"),
            GeomError::CoplanarPoints => write!(f, "points are coplanar"),
            GeomError::OutOfRange { value } => write!(f, "argument {value} is out of range"),
            GeomError::NotCongruent { max_residual } => {
                write!(
                    f,
                    "point sets are not congruent (best residual {max_residual:.3e})"
                )
            }
            GeomError::LengthMismatch { left, right } => {
                write!(f, "correspondence length mismatch: {left} vs {right}")
            }
            GeomError::TooFewPoints { got, need } => {
                write!(f, "need at least {need} points, got {got}")
            }
        }
    }
}

impl std::error::Error for GeomError {}
