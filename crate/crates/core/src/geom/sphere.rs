use super::tolerance::Tolerance;
use super::vec::{Point3, Vec3};
use super::GeomError;

/// A sphere in 3-space with strictly positive radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere {
    pub center: Point3,
    pub radius: f64,
}

impl Sphere {
    pub fn new(center: Point3, radius: f64) -> Self {
        assert!(radius > 0.0, "sphere radius must be positive");
        Sphere { center, radius }
    }

    /// Unit sphere around `center`.
    pub fn unit(center: Point3) -> Self {
        Sphere {
            center,
            radius: 1.0,
        }
    }

    pub fn contains(&self, p: Point3, eps: f64) -> bool {
        p.dist(self.center) <= self.radius + eps
    }

    pub fn on_boundary(&self, p: Point3, eps: f64) -> bool {
        (p.dist(self.center) - self.radius).abs() <= eps
    }
}

/// Result of intersecting three equal-radius spheres.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TripleIntersection {
    Empty,
    /// Tangential contact: the common chord line touches the spheres.
    Tangent(Point3),
    /// Two points, mirror images across the plane of the centers.
    Pair(Point3, Point3),
}

impl TripleIntersection {
    pub fn points(&self) -> Vec<Point3> {
        match *self {
            TripleIntersection::Empty => vec![],
            TripleIntersection::Tangent(p) => vec![p],
            TripleIntersection::Pair(a, b) => vec![a, b],
        }
    }
}

/// Intersect the three spheres of common radius `r` centered at `c1`, `c2`,
/// `c3`.
///
/// The equidistance conditions between center pairs are two linear
/// (perpendicular-bisector) equations; their solution line meets the sphere
/// around `c1` in zero, one, or two points. Collinear centers leave a circle
/// or nothing instead of isolated points and are rejected.
pub fn sphere_triple_intersection(
    c1: Point3,
    c2: Point3,
    c3: Point3,
    r: f64,
    tol: &Tolerance,
) -> Result<TripleIntersection, GeomError> {
    if c1.dist(c2) <= tol.eps_len || c1.dist(c3) <= tol.eps_len || c2.dist(c3) <= tol.eps_len {
        return Err(GeomError::CollinearCenters);
    }
    let u = c2 - c1;
    let v = c3 - c1;
    let axis = u.cross(v);
    if axis.norm() <= tol.eps_cosp {
        return Err(GeomError::CollinearCenters);
    }
    let axis = axis.unit();

    // Seek p0 = c1 + a*u + b*v in the centers' plane satisfying both
    // bisector equations <p - c1, u> = |u|^2/2 and <p - c1, v> = |v|^2/2.
    let (uu, uv, vv) = (u.dot(u), u.dot(v), v.dot(v));
    let det = uu * vv - uv * uv;
    let rhs_u = uu / 2.0;
    let rhs_v = vv / 2.0;
    let a = (rhs_u * vv - rhs_v * uv) / det;
    let b = (uu * rhs_v - uv * rhs_u) / det;
    let p0 = c1 + u * a + v * b;

    // p0 - c1 lies in the centers' plane, orthogonal to the axis, so the
    // quadratic along the axis reduces to t^2 = r^2 - |p0 - c1|^2.
    let disc = r * r - p0.dist_sq(c1);
    let band = 2.0 * r * tol.eps_len;
    if disc < -band {
        return Ok(TripleIntersection::Empty);
    }
    if disc <= band {
        return Ok(TripleIntersection::Tangent(p0));
    }
    let t = disc.sqrt();
    Ok(TripleIntersection::Pair(p0 + axis * t, p0 - axis * t))
}

/// Sphere through four affinely independent points.
pub fn circumsphere(
    p1: Point3,
    p2: Point3,
    p3: Point3,
    p4: Point3,
    tol: &Tolerance,
) -> Result<Sphere, GeomError> {
    let u = p2 - p1;
    let v = p3 - p1;
    let w = p4 - p1;
    let det = u.dot(v.cross(w));
    if det.abs() <= tol.eps_cosp {
        return Err(GeomError::CoplanarPoints);
    }
    // Equidistance from p1 gives three linear equations <x - p1, d> = |d|^2/2
    // for d in {u, v, w}; solve by Cramer's rule.
    let rhs = Vec3::new(u.norm_sq() / 2.0, v.norm_sq() / 2.0, w.norm_sq() / 2.0);
    let vw = v.cross(w);
    let wu = w.cross(u);
    let uv = u.cross(v);
    let offset = (vw * rhs.x + wu * rhs.y + uv * rhs.z) / det;
    let center = p1 + offset;
    Ok(Sphere::new(center, center.dist(p1)))
}
