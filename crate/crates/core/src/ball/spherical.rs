use super::polyhedron::{edge_tangent_into, BallPolyhedron};
use super::BallError;
use crate::geom::{max_margin_direction, CapConstraint, Point3, Sphere, Tolerance, Vec3};

/// Closed spherical cap on a support sphere: the points whose direction
/// from the sphere center is within `angular_radius` of `apex_dir`.
#[derive(Clone, Copy, Debug)]
pub struct SphericalCap {
    pub sphere: Sphere,
    /// Unit direction from the sphere center to the cap center.
    pub apex_dir: Vec3,
    /// In (0, pi].
    pub angular_radius: f64,
}

impl SphericalCap {
    /// Cap center as a point on the support sphere.
    pub fn cap_center(&self) -> Point3 {
        self.sphere.center + self.apex_dir * self.sphere.radius
    }

    /// Membership for a point assumed to lie on the support sphere.
    pub fn contains(&self, p: Point3, eps_ang: f64) -> bool {
        let u = (p - self.sphere.center).unit();
        u.dot(self.apex_dir) >= (self.angular_radius + eps_ang).cos()
    }
}

/// A spherical polygon on a support sphere, given by its vertices in cyclic
/// order, with geodesic side lengths and interior angles.
#[derive(Clone, Debug)]
pub struct SphericalPolygon {
    pub sphere: Sphere,
    pub vertices: Vec<Point3>,
    /// Geodesic length of the side from vertex i to vertex i+1.
    pub side_lengths: Vec<f64>,
    /// Interior angle at vertex i.
    pub interior_angles: Vec<f64>,
}

impl SphericalPolygon {
    /// Build from unit directions (relative to the sphere center) in cyclic
    /// order.
    pub fn from_directions(
        sphere: Sphere,
        dirs: &[Vec3],
        tol: &Tolerance,
    ) -> Result<Self, BallError> {
        if dirs.len() < 3 {
            return Err(BallError::TooFewVertices {
                got: dirs.len(),
                need: 3,
            });
        }
        let n = dirs.len();
        let dirs: Vec<Vec3> = dirs.iter().map(|d| d.unit()).collect();
        let mut side_lengths = Vec::with_capacity(n);
        let mut interior_angles = Vec::with_capacity(n);
        for i in 0..n {
            let next = dirs[(i + 1) % n];
            side_lengths.push(sphere.radius * dirs[i].angle_to(next));
        }
        for i in 0..n {
            let prev = dirs[(i + n - 1) % n];
            let here = dirs[i];
            let next = dirs[(i + 1) % n];
            let t_prev = (prev - here * prev.dot(here)).normalized();
            let t_next = (next - here * next.dot(here)).normalized();
            match (t_prev, t_next) {
                (Some(a), Some(b)) => interior_angles.push(a.angle_to(b)),
                _ => return Err(BallError::DegenerateSphericalPolygon),
            }
        }
        let vertices = dirs
            .iter()
            .map(|d| sphere.center + *d * sphere.radius)
            .collect();
        let _ = tol;
        Ok(SphericalPolygon {
            sphere,
            vertices,
            side_lengths,
            interior_angles,
        })
    }

    /// Build from points required to lie on the support sphere.
    pub fn from_points(
        sphere: Sphere,
        points: &[Point3],
        tol: &Tolerance,
    ) -> Result<Self, BallError> {
        for p in points {
            if (p.dist(sphere.center) - sphere.radius).abs() > 16.0 * tol.eps_len {
                return Err(BallError::PointOffSphere { point: *p });
            }
        }
        let dirs: Vec<Vec3> = points.iter().map(|p| (*p - sphere.center).unit()).collect();
        Self::from_directions(sphere, &dirs, tol)
    }

    pub fn unit_directions(&self) -> Vec<Vec3> {
        self.vertices
            .iter()
            .map(|v| (*v - self.sphere.center).unit())
            .collect()
    }

    /// Spherical convexity: every side's great circle leaves all remaining
    /// vertices (weakly) on one common side.
    pub fn is_convex(&self, tol: &Tolerance) -> bool {
        let dirs = self.unit_directions();
        let n = dirs.len();
        let mut global_sign = 0.0f64;
        for i in 0..n {
            let g = dirs[i].cross(dirs[(i + 1) % n]);
            let g = match g.normalized() {
                Some(g) => g,
                None => return false, // antipodal or repeated vertices
            };
            for (j, d) in dirs.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                let s = g.dot(*d);
                if s.abs() <= tol.eps_ang {
                    continue;
                }
                if global_sign == 0.0 {
                    global_sign = s.signum();
                } else if s.signum() != global_sign {
                    return false;
                }
            }
        }
        true
    }

    /// Whether all vertices fit in an open hemisphere.
    pub fn in_open_hemisphere(&self, tol: &Tolerance) -> bool {
        let caps: Vec<CapConstraint> = self
            .unit_directions()
            .into_iter()
            .map(|axis| CapConstraint { axis, min_cos: 0.0 })
            .collect();
        max_margin_direction(&caps).1 > tol.eps_ang
    }

    /// Poles of the sides, oriented away from the polygon: the vertex
    /// directions of the polar dual.
    pub fn side_poles(&self) -> Vec<Vec3> {
        let dirs = self.unit_directions();
        let n = dirs.len();
        let interior = crate::geom::centroid(&dirs).normalized().unwrap_or(dirs[0]);
        (0..n)
            .map(|i| {
                let g = dirs[i].cross(dirs[(i + 1) % n]).unit();
                if g.dot(interior) > 0.0 {
                    -g
                } else {
                    g
                }
            })
            .collect()
    }
}

/// The cyclic arrangement of edges and faces around a vertex: `faces[i]`
/// is the face between `edges[i]` and `edges[(i+1) % n]`.
#[derive(Clone, Debug)]
pub struct VertexStar {
    pub vertex: usize,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
    /// Unit tangents of the edges at the vertex, matching `edges`.
    pub tangents: Vec<Vec3>,
}

/// Cyclically order the edges and faces incident to vertex `j`.
pub fn vertex_star(p: &BallPolyhedron, j: usize) -> Result<VertexStar, BallError> {
    let Some(vertex) = p.vertices.get(j) else {
        return Err(BallError::DegenerateVertex {
            point: Point3::ZERO,
            spheres: vec![],
        });
    };
    let vp = vertex.point;
    let incident: Vec<usize> = (0..p.edges.len())
        .filter(|&e| p.edges[e].distinct_endpoints().contains(&j))
        .collect();
    if incident.len() < 3 {
        return Err(BallError::DegenerateVertex {
            point: vp,
            spheres: vertex.spheres.to_vec(),
        });
    }

    // Sort tangents by angle around the mean outward normal.
    let axis = vertex
        .spheres
        .iter()
        .fold(Vec3::ZERO, |acc, &k| acc + (vp - p.centers()[k]))
        .unit();
    let e1 = axis.any_orthonormal();
    let e2 = axis.cross(e1);
    let mut order: Vec<(f64, usize, Vec3)> = incident
        .iter()
        .map(|&e| {
            let t = edge_tangent_into(&p.edges[e], vp);
            (t.dot(e2).atan2(t.dot(e1)), e, t)
        })
        .collect();
    order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let edges: Vec<usize> = order.iter().map(|(_, e, _)| *e).collect();
    let tangents: Vec<Vec3> = order.iter().map(|(_, _, t)| *t).collect();
    let mut faces = Vec::with_capacity(edges.len());
    for i in 0..edges.len() {
        let a = p.edges[edges[i]].spheres;
        let b = p.edges[edges[(i + 1) % edges.len()]].spheres;
        let common: Vec<usize> = a.iter().filter(|k| b.contains(k)).copied().collect();
        if common.len() != 1 {
            return Err(BallError::DegenerateVertex {
                point: vp,
                spheres: vertex.spheres.to_vec(),
            });
        }
        faces.push(common[0]);
    }
    Ok(VertexStar {
        vertex: j,
        edges,
        faces,
        tangents,
    })
}

/// The vertex figure: the tangent cone of the body at vertex `j`, cut with
/// the unit sphere around the vertex. Its sides are the face angles at the
/// vertex and its interior angles are the dihedral angles of the incident
/// edges.
pub fn vertex_figure(p: &BallPolyhedron, j: usize) -> Result<SphericalPolygon, BallError> {
    let star = vertex_star(p, j)?;
    SphericalPolygon::from_directions(Sphere::unit(p.vertices[j].point), &star.tangents, &p.tol)
}

/// The normal image: the outer normal cone at vertex `j` cut with the unit
/// sphere around it. Its sides are pi minus the dihedral angles and its
/// interior angles are pi minus the face angles.
pub fn normal_image(p: &BallPolyhedron, j: usize) -> Result<SphericalPolygon, BallError> {
    let star = vertex_star(p, j)?;
    normal_image_ordered(p, j, &star.faces)
}

/// Normal image with a caller-prescribed cyclic face order (used to align
/// two combinatorially equivalent polyhedra vertex by vertex).
pub fn normal_image_ordered(
    p: &BallPolyhedron,
    j: usize,
    face_order: &[usize],
) -> Result<SphericalPolygon, BallError> {
    let Some(vertex) = p.vertices.get(j) else {
        return Err(BallError::DegenerateVertex {
            point: Point3::ZERO,
            spheres: vec![],
        });
    };
    let vp = vertex.point;
    let dirs: Vec<Vec3> = face_order
        .iter()
        .map(|&k| (vp - p.centers()[k]).unit())
        .collect();
    SphericalPolygon::from_directions(Sphere::unit(vp), &dirs, &p.tol)
}

/// The spherical-cap representation of face `k`: one cap per neighboring
/// sphere, each centered toward that neighbor with angular radius half the
/// shared dihedral angle. Membership in the face equals membership in every
/// returned cap.
pub fn face_cap_representation(p: &BallPolyhedron, k: usize) -> Vec<SphericalCap> {
    let centers = p.centers();
    p.faces[k]
        .neighbors
        .iter()
        .map(|&i| {
            let d = centers[k].dist(centers[i]);
            SphericalCap {
                sphere: Sphere::unit(centers[k]),
                apex_dir: (centers[i] - centers[k]) / d,
                angular_radius: (d / 2.0).acos(),
            }
        })
        .collect()
}

/// The geodesic polygon through the vertices of face `k` on its support
/// sphere, in boundary order. Contained in the face by spherical convexity.
pub fn spherical_convex_hull(p: &BallPolyhedron, k: usize) -> Result<SphericalPolygon, BallError> {
    let face = &p.faces[k];
    let ids = face.vertex_ids();
    if ids.len() < 3 {
        return Err(BallError::TooFewVertices {
            got: ids.len(),
            need: 3,
        });
    }
    let pts: Vec<Point3> = ids.iter().map(|&v| p.vertices[v].point).collect();
    SphericalPolygon::from_points(Sphere::unit(p.centers()[k]), &pts, &p.tol)
}

/// Hull polygon with a caller-prescribed vertex order (used for aligned
/// comparisons between two polyhedra).
pub fn spherical_convex_hull_ordered(
    p: &BallPolyhedron,
    k: usize,
    vertex_order: &[usize],
) -> Result<SphericalPolygon, BallError> {
    if vertex_order.len() < 3 {
        return Err(BallError::TooFewVertices {
            got: vertex_order.len(),
            need: 3,
        });
    }
    let pts: Vec<Point3> = vertex_order.iter().map(|&v| p.vertices[v].point).collect();
    SphericalPolygon::from_points(Sphere::unit(p.centers()[k]), &pts, &p.tol)
}
