use super::GeomError;

/// Inner dihedral angle along an edge of two unit balls whose centers are
/// `d` apart, `0 < d < 2`.
///
/// At any point of the intersection circle the two supporting half-space
/// normals enclose `arccos(1 - d^2/2)`; the wedge they cut is the complement.
/// Strictly decreasing in `d`, with range `(0, pi)`.
pub fn dihedral_from_center_distance(d: f64) -> Result<f64, GeomError> {
    if !(d > 0.0 && d < 2.0) {
        return Err(GeomError::OutOfRange { value: d });
    }
    Ok(std::f64::consts::PI - (1.0 - d * d / 2.0).acos())
}

/// Inverse of [`dihedral_from_center_distance`]: the center distance that
/// produces inner dihedral angle `alpha` in `(0, pi)`.
pub fn center_distance_from_dihedral(alpha: f64) -> Result<f64, GeomError> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(GeomError::OutOfRange { value: alpha });
    }
    let d_sq = 2.0 - 2.0 * (std::f64::consts::PI - alpha).cos();
    Ok(d_sq.sqrt())
}

/// Euclidean radius of the intersection circle of two unit spheres with
/// centers `d` apart; equals `sin(alpha/2)` for the corresponding dihedral.
pub fn edge_circle_radius(d: f64) -> f64 {
    (1.0 - d * d / 4.0).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Point3, Vec3};
    use std::f64::consts::PI;

    /// Independent oracle: build the configuration explicitly and measure
    /// the wedge angle from the supporting half-space normals at a concrete
    /// edge point.
    fn dihedral_oracle(d: f64) -> f64 {
        let x1 = Point3::new(-d / 2.0, 0.0, 0.0);
        let x2 = Point3::new(d / 2.0, 0.0, 0.0);
        let p = Point3::new(0.0, (1.0 - d * d / 4.0).sqrt(), 0.0);
        let n1: Vec3 = (p - x1).unit();
        let n2: Vec3 = (p - x2).unit();
        PI - n1.dot(n2).clamp(-1.0, 1.0).acos()
    }

    #[test]
    fn unit_distance_gives_two_thirds_pi() {
        let a = dihedral_from_center_distance(1.0).unwrap();
        assert!((a - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((a - dihedral_oracle(1.0)).abs() < 1e-12);
    }

    #[test]
    fn sqrt2_distance_gives_right_angle() {
        let a = dihedral_from_center_distance(2f64.sqrt()).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-12);
        assert!((a - dihedral_oracle(2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn wedge_vanishes_for_tangent_balls() {
        let a = dihedral_from_center_distance(2.0 - 1e-12).unwrap();
        assert!(a < 1e-5);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(dihedral_from_center_distance(0.0).is_err());
        assert!(dihedral_from_center_distance(-1.0).is_err());
        assert!(dihedral_from_center_distance(2.0).is_err());
    }

    #[test]
    fn round_trip_and_edge_radius_identity() {
        for i in 1..400 {
            let d = 2.0 * i as f64 / 401.0;
            let a = dihedral_from_center_distance(d).unwrap();
            let back = center_distance_from_dihedral(a).unwrap();
            assert!((back - d).abs() < 1e-12, "round trip failed at d={d}");
            assert!((edge_circle_radius(d) - (a / 2.0).sin()).abs() < 1e-12);
        }
    }
}
