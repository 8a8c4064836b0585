use super::family::{redundant_indices, UnitBallFamily};
use super::BallError;
use crate::geom::{
    dihedral_from_center_distance, edge_circle_radius, smallest_enclosing_ball,
    sphere_triple_intersection, Point3, Tolerance, Vec3,
};
use std::collections::BTreeMap;

/// A boundary point lying on exactly three generating spheres.
#[derive(Clone, Debug)]
pub struct BallVertex {
    pub point: Point3,
    /// Sorted indices of the spheres through this vertex.
    pub spheres: [usize; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Proper arc between two vertices (which coincide for a degenerate
    /// loop arc).
    Arc { ends: [usize; 2] },
    /// An entire intersection circle on the boundary; carries no vertices
    /// and disqualifies standardness.
    FullCircle,
}

/// A maximal boundary arc on the intersection circle of two generating
/// spheres.
#[derive(Clone, Debug)]
pub struct BallEdge {
    /// Sorted indices of the two supporting spheres.
    pub spheres: [usize; 2],
    pub circle_center: Point3,
    pub circle_radius: f64,
    /// Unit axis of the carrier circle, from the lower to the higher
    /// supporting center.
    pub circle_axis: Vec3,
    pub kind: EdgeKind,
    /// A point in the relative interior of the arc.
    pub midpoint: Point3,
    /// Angle subtended at the carrier circle center, measured in the
    /// carrier plane (2*pi for a full circle).
    pub central_angle: f64,
}

impl BallEdge {
    pub fn endpoints(&self) -> Option<[usize; 2]> {
        match self.kind {
            EdgeKind::Arc { ends } => Some(ends),
            EdgeKind::FullCircle => None,
        }
    }

    pub fn arc_length(&self) -> f64 {
        self.circle_radius * self.central_angle
    }

    /// Distinct endpoint vertex ids (one entry for a loop arc, none for a
    /// full circle).
    pub fn distinct_endpoints(&self) -> Vec<usize> {
        match self.kind {
            EdgeKind::Arc { ends } if ends[0] == ends[1] => vec![ends[0]],
            EdgeKind::Arc { ends } => vec![ends[0], ends[1]],
            EdgeKind::FullCircle => vec![],
        }
    }
}

/// One edge traversal inside a face boundary walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientedEdge {
    pub edge: usize,
    /// Traversal against the carrier circle's positive sense.
    pub reversed: bool,
}

/// The face of one generating sphere: the spherically convex patch it
/// contributes to the boundary.
#[derive(Clone, Debug)]
pub struct BallFace {
    pub sphere: usize,
    /// Boundary cycles, each walked with the face interior on the left as
    /// seen from outside. A standard face has exactly one cycle.
    pub cycles: Vec<Vec<OrientedEdge>>,
    /// Per cycle, the vertex at which each oriented edge starts (empty for
    /// a full-circle cycle).
    pub vertex_cycles: Vec<Vec<usize>>,
    /// Sorted indices of the spheres supporting this face's edges.
    pub neighbors: Vec<usize>,
}

impl BallFace {
    /// Edge ids over all cycles.
    pub fn edge_ids(&self) -> Vec<usize> {
        self.cycles.iter().flatten().map(|oe| oe.edge).collect()
    }

    /// Vertex ids over all cycles, in walk order.
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.vertex_cycles.iter().flatten().copied().collect()
    }
}

/// Dihedral angles, face angles and arc lengths of a built polyhedron.
#[derive(Clone, Debug)]
pub struct AngleData {
    /// Inner dihedral angle per edge id.
    pub dihedral: Vec<f64>,
    /// Arc length per edge id.
    pub edge_length: Vec<f64>,
    /// Face angle at (vertex id, sphere id).
    pub face_angles: BTreeMap<(usize, usize), f64>,
}

/// A ball-polyhedron: the intersection of the family's unit balls, with its
/// vertex-edge-face structure and geometric carriers. Immutable once built.
#[derive(Clone, Debug)]
pub struct BallPolyhedron {
    pub family: UnitBallFamily,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<BallEdge>,
    /// One face per family ball, same indexing.
    pub faces: Vec<BallFace>,
    pub tol: Tolerance,
}

impl BallPolyhedron {
    pub fn centers(&self) -> &[Point3] {
        &self.family.centers
    }

    /// Edge ids supported by the given sphere pair (sorted or not).
    pub fn edges_of_pair(&self, a: usize, b: usize) -> Vec<usize> {
        let pair = if a < b { [a, b] } else { [b, a] };
        (0..self.edges.len())
            .filter(|&e| self.edges[e].spheres == pair)
            .collect()
    }

    /// Sorted sphere-index sets of all vertices.
    pub fn vertex_regions(&self) -> Vec<[usize; 3]> {
        self.vertices.iter().map(|v| v.spheres).collect()
    }
}

/// Construct the boundary structure of the ball-polyhedron generated by a
/// reduced family.
///
/// Vertices are the triple-sphere intersection points lying in every ball;
/// edges are the maximal arcs between consecutive vertices on each pairwise
/// intersection circle (whole circles are kept as a distinguished kind);
/// faces are assembled by walking each sphere's boundary arcs with the face
/// interior on the left. Dihedral angles come from the center distances,
/// face angles from edge tangent vectors at the vertices, and arc lengths
/// from the subtended angle in the carrier plane.
pub fn build(
    family: &UnitBallFamily,
    tol: &Tolerance,
) -> Result<(BallPolyhedron, AngleData), BallError> {
    let centers = &family.centers;
    let (_, seb) = smallest_enclosing_ball(centers);
    if seb > 1.0 - tol.eps_len {
        return Err(BallError::EmptyInterior);
    }
    let redundant = redundant_indices(centers, tol);
    if !redundant.is_empty() {
        return Err(BallError::NotReduced { redundant });
    }

    let vertices = collect_vertices(centers, tol)?;
    let edges = collect_edges(centers, &vertices, tol);
    let faces = assemble_faces(centers, &edges)?;

    let polyhedron = BallPolyhedron {
        family: family.clone(),
        vertices,
        edges,
        faces,
        tol: *tol,
    };
    let angles = angle_data(&polyhedron)?;
    Ok((polyhedron, angles))
}

fn collect_vertices(centers: &[Point3], tol: &Tolerance) -> Result<Vec<BallVertex>, BallError> {
    let f = centers.len();
    let meet_band = 16.0 * tol.eps_len;
    let mut found: Vec<(Point3, Vec<usize>)> = Vec::new();

    for a in 0..f {
        for b in a + 1..f {
            for c in b + 1..f {
                let hit = match sphere_triple_intersection(
                    centers[a], centers[b], centers[c], 1.0, tol,
                ) {
                    Ok(h) => h,
                    Err(_) => continue, // collinear centers carry no isolated triple points
                };
                'points: for p in hit.points() {
                    // The point must lie in every ball; spheres within the
                    // meet band count as passing through it.
                    let mut spheres = Vec::with_capacity(3);
                    for (k, center) in centers.iter().enumerate() {
                        let d = p.dist(*center);
                        if d > 1.0 + meet_band {
                            continue 'points;
                        }
                        if (d - 1.0).abs() <= meet_band {
                            spheres.push(k);
                        }
                    }
                    debug_assert!(
                        spheres.contains(&a) && spheres.contains(&b) && spheres.contains(&c)
                    );
                    if spheres.len() > 3 {
                        return Err(BallError::DegenerateVertex { point: p, spheres });
                    }
                    // Merge with an existing copy of the same point (found
                    // through a different triple only in degenerate cases).
                    if let Some(existing) = found.iter_mut().find(|(q, _)| q.dist(p) <= meet_band) {
                        for s in spheres {
                            if !existing.1.contains(&s) {
                                existing.1.push(s);
                            }
                        }
                        if existing.1.len() > 3 {
                            return Err(BallError::DegenerateVertex {
                                point: existing.0,
                                spheres: existing.1.clone(),
                            });
                        }
                    } else {
                        found.push((p, spheres));
                    }
                }
            }
        }
    }

    // Deterministic ids: lexicographic by coordinates.
    found.sort_by(|(p, _), (q, _)| (p.x, p.y, p.z).partial_cmp(&(q.x, q.y, q.z)).unwrap());
    Ok(found
        .into_iter()
        .map(|(point, mut spheres)| {
            spheres.sort_unstable();
            BallVertex {
                point,
                spheres: [spheres[0], spheres[1], spheres[2]],
            }
        })
        .collect())
}

struct CircleFrame {
    center: Point3,
    radius: f64,
    axis: Vec3,
    e1: Vec3,
    e2: Vec3,
}

fn circle_frame(centers: &[Point3], a: usize, b: usize) -> CircleFrame {
    let d = centers[a].dist(centers[b]);
    let axis = (centers[b] - centers[a]) / d;
    let e1 = axis.any_orthonormal();
    let e2 = axis.cross(e1);
    CircleFrame {
        center: (centers[a] + centers[b]) / 2.0,
        radius: edge_circle_radius(d),
        axis,
        e1,
        e2,
    }
}

impl CircleFrame {
    fn point_at(&self, phi: f64) -> Point3 {
        self.center + (self.e1 * phi.cos() + self.e2 * phi.sin()) * self.radius
    }

    fn angle_of(&self, p: Point3) -> f64 {
        let d = p - self.center;
        d.dot(self.e2).atan2(d.dot(self.e1))
    }
}

fn collect_edges(centers: &[Point3], vertices: &[BallVertex], tol: &Tolerance) -> Vec<BallEdge> {
    let f = centers.len();
    let mut edges = Vec::new();
    for a in 0..f {
        for b in a + 1..f {
            let frame = circle_frame(centers, a, b);
            let inside_others = |p: Point3| {
                centers
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != a && *k != b)
                    .all(|(_, c)| p.dist(*c) <= 1.0 + tol.eps_len)
            };

            let mut on_circle: Vec<(f64, usize)> = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.spheres.contains(&a) && v.spheres.contains(&b))
                .map(|(id, v)| (frame.angle_of(v.point), id))
                .collect();

            if on_circle.is_empty() {
                let sample = frame.point_at(0.0);
                if inside_others(sample) {
                    edges.push(BallEdge {
                        spheres: [a, b],
                        circle_center: frame.center,
                        circle_radius: frame.radius,
                        circle_axis: frame.axis,
                        kind: EdgeKind::FullCircle,
                        midpoint: sample,
                        central_angle: 2.0 * std::f64::consts::PI,
                    });
                }
                continue;
            }

            on_circle.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let m = on_circle.len();
            for i in 0..m {
                let (phi_start, v_start) = on_circle[i];
                let (phi_end_raw, v_end) = on_circle[(i + 1) % m];
                let mut span = phi_end_raw - phi_start;
                if span <= 0.0 {
                    span += 2.0 * std::f64::consts::PI;
                }
                if m == 1 {
                    span = 2.0 * std::f64::consts::PI;
                }
                let midpoint = frame.point_at(phi_start + span / 2.0);
                if inside_others(midpoint) {
                    edges.push(BallEdge {
                        spheres: [a, b],
                        circle_center: frame.center,
                        circle_radius: frame.radius,
                        circle_axis: frame.axis,
                        kind: EdgeKind::Arc {
                            ends: [v_start, v_end],
                        },
                        midpoint,
                        central_angle: span,
                    });
                }
            }
        }
    }
    edges
}

/// Tangent of an edge's carrier circle at `p`, pointing into the arc
/// (toward the midpoint witness along the circle).
pub(super) fn edge_tangent_into(edge: &BallEdge, p: Point3) -> Vec3 {
    let raw = edge.circle_axis.cross(p - edge.circle_center).unit();
    if raw.dot(edge.midpoint - p) >= 0.0 {
        raw
    } else {
        -raw
    }
}

fn assemble_faces(centers: &[Point3], edges: &[BallEdge]) -> Result<Vec<BallFace>, BallError> {
    let mut faces = Vec::with_capacity(centers.len());
    for k in 0..centers.len() {
        let edge_ids: Vec<usize> = (0..edges.len())
            .filter(|&e| edges[e].spheres.contains(&k))
            .collect();
        let mut neighbors: Vec<usize> = edge_ids
            .iter()
            .map(|&e| {
                let [x, y] = edges[e].spheres;
                if x == k {
                    y
                } else {
                    x
                }
            })
            .collect();
        neighbors.sort_unstable();
        neighbors.dedup();

        let mut cycles = Vec::new();
        let mut vertex_cycles = Vec::new();
        let mut used = vec![false; edge_ids.len()];

        // Full circles and loop arcs close on their own.
        for (pos, &e) in edge_ids.iter().enumerate() {
            let single = match edges[e].kind {
                EdgeKind::FullCircle => true,
                EdgeKind::Arc { ends } => ends[0] == ends[1],
            };
            if single {
                used[pos] = true;
                let oriented = orient_cycle(
                    centers,
                    edges,
                    k,
                    vec![OrientedEdge {
                        edge: e,
                        reversed: false,
                    }],
                );
                let vcycle = match edges[e].kind {
                    EdgeKind::Arc { ends } => vec![ends[0]],
                    EdgeKind::FullCircle => vec![],
                };
                cycles.push(oriented);
                vertex_cycles.push(vcycle);
            }
        }

        // Chain proper arcs through shared vertices.
        while let Some(start_pos) = (0..edge_ids.len()).find(|&p| !used[p]) {
            used[start_pos] = true;
            let start_edge = edge_ids[start_pos];
            let ends = edges[start_edge].endpoints().expect("proper arc");
            let start_vertex = ends[0];
            let mut walk = vec![OrientedEdge {
                edge: start_edge,
                reversed: false,
            }];
            let mut at = ends[1];
            let mut guard = 0;
            while at != start_vertex {
                guard += 1;
                if guard > edges.len() + 2 {
                    return Err(BallError::BoundaryWalkFailed { sphere: k });
                }
                let mut next: Option<(usize, usize, bool)> = None; // (pos, edge, reversed)
                for (pos, &e) in edge_ids.iter().enumerate() {
                    if used[pos] {
                        continue;
                    }
                    if let Some([s, t]) = edges[e].endpoints() {
                        if s == at {
                            next = Some((pos, e, false));
                            break;
                        }
                        if t == at {
                            next = Some((pos, e, true));
                            break;
                        }
                    }
                }
                let Some((pos, e, reversed)) = next else {
                    return Err(BallError::BoundaryWalkFailed { sphere: k });
                };
                used[pos] = true;
                let [s, t] = edges[e].endpoints().unwrap();
                at = if reversed { s } else { t };
                walk.push(OrientedEdge { edge: e, reversed });
            }
            let walk = orient_cycle(centers, edges, k, walk);
            let vcycle = walk
                .iter()
                .map(|oe| {
                    let [s, t] = edges[oe.edge].endpoints().unwrap();
                    if oe.reversed {
                        t
                    } else {
                        s
                    }
                })
                .collect();
            cycles.push(walk);
            vertex_cycles.push(vcycle);
        }

        // Deterministic cycle order: by smallest edge id.
        let mut order: Vec<usize> = (0..cycles.len()).collect();
        order.sort_by_key(|&i| {
            cycles[i]
                .iter()
                .map(|oe| oe.edge)
                .min()
                .unwrap_or(usize::MAX)
        });
        let cycles: Vec<_> = order.iter().map(|&i| cycles[i].clone()).collect();
        let vertex_cycles: Vec<_> = order.iter().map(|&i| vertex_cycles[i].clone()).collect();

        faces.push(BallFace {
            sphere: k,
            cycles,
            vertex_cycles,
            neighbors,
        });
    }
    Ok(faces)
}

/// Fix a cycle's traversal so the face interior lies to the left as seen
/// from outside the sphere, then rotate it to start at its smallest edge id
/// (ties by the smaller start vertex).
fn orient_cycle(
    centers: &[Point3],
    edges: &[BallEdge],
    sphere: usize,
    mut walk: Vec<OrientedEdge>,
) -> Vec<OrientedEdge> {
    let probe = &edges[walk[0].edge];
    let m = probe.midpoint;
    let outward = (m - centers[sphere]).unit();
    // Tangent along the traversal at the probe edge's midpoint.
    let t_raw = probe.circle_axis.cross(m - probe.circle_center).unit();
    let t_walk = if walk[0].reversed { -t_raw } else { t_raw };
    // Interior direction: into the cap of the other supporting sphere.
    let other = if probe.spheres[0] == sphere {
        probe.spheres[1]
    } else {
        probe.spheres[0]
    };
    let cap_axis = (centers[other] - centers[sphere]).unit();
    let interior = (cap_axis - outward * cap_axis.dot(outward)).unit();
    if outward.cross(t_walk).dot(interior) < 0.0 {
        walk.reverse();
        for oe in &mut walk {
            oe.reversed = !oe.reversed;
        }
    }
    // Canonical starting point.
    if walk.len() > 1 {
        let best = (0..walk.len())
            .min_by_key(|&i| {
                let oe = walk[i];
                let start = edges[oe.edge]
                    .endpoints()
                    .map(|[s, t]| if oe.reversed { t } else { s });
                (oe.edge, start)
            })
            .unwrap();
        walk.rotate_left(best);
    }
    walk
}

/// Recompute the angle tables of a built polyhedron: dihedral angles from
/// the center distances, arc lengths from the carrier geometry, face angles
/// from the pair of edge tangents at each face corner.
pub fn angle_data(p: &BallPolyhedron) -> Result<AngleData, BallError> {
    let centers = p.centers();
    let mut dihedral = Vec::with_capacity(p.edges.len());
    let mut edge_length = Vec::with_capacity(p.edges.len());
    for e in &p.edges {
        let d = centers[e.spheres[0]].dist(centers[e.spheres[1]]);
        let alpha = dihedral_from_center_distance(d).map_err(|_| BallError::EmptyInterior)?;
        dihedral.push(alpha);
        edge_length.push(e.arc_length());
    }

    let mut face_angles = BTreeMap::new();
    for face in &p.faces {
        for (cycle, vcycle) in face.cycles.iter().zip(&face.vertex_cycles) {
            if vcycle.is_empty() {
                continue;
            }
            let n = cycle.len();
            for i in 0..n {
                // The walk enters vertex vcycle[(i+1)%n] along cycle[i] and
                // leaves along cycle[(i+1)%n].
                let v = vcycle[(i + 1) % n];
                let e_in = &p.edges[cycle[i].edge];
                let e_out = &p.edges[cycle[(i + 1) % n].edge];
                let vp = p.vertices[v].point;
                let t_in = edge_tangent_into(e_in, vp);
                let t_out = edge_tangent_into(e_out, vp);
                let beta = t_in.angle_to(t_out);
                face_angles.insert((v, face.sphere), beta);
            }
        }
    }
    Ok(AngleData {
        dihedral,
        edge_length,
        face_angles,
    })
}

/// Certificate naming the structure that breaks the lattice conditions.
#[derive(Clone, Debug, PartialEq)]
pub enum StandardCertificate {
    FullCircleEdge {
        edge: usize,
    },
    /// An arc whose endpoints coincide.
    LoopEdge {
        edge: usize,
    },
    /// A face with no boundary (the whole sphere) or several boundary
    /// cycles.
    BadFaceBoundary {
        face: usize,
        cycles: usize,
    },
    /// Two faces meeting in more than one vertex or edge.
    FaceFace {
        faces: [usize; 2],
        shared_edges: Vec<usize>,
        shared_vertices: Vec<usize>,
    },
    /// Two edges sharing both endpoints.
    EdgeEdge {
        edges: [usize; 2],
    },
}

#[derive(Clone, Debug)]
pub struct StandardnessReport {
    pub standard: bool,
    pub certificate: Option<StandardCertificate>,
}

/// Decide whether the vertex-edge-face structure is a lattice: any two
/// faces meet in nothing, one vertex or one edge, and any two edges share
/// at most one vertex.
pub fn is_standard(p: &BallPolyhedron) -> StandardnessReport {
    let fail = |certificate| StandardnessReport {
        standard: false,
        certificate: Some(certificate),
    };

    for (e, edge) in p.edges.iter().enumerate() {
        match edge.kind {
            EdgeKind::FullCircle => return fail(StandardCertificate::FullCircleEdge { edge: e }),
            EdgeKind::Arc { ends } if ends[0] == ends[1] => {
                return fail(StandardCertificate::LoopEdge { edge: e })
            }
            _ => {}
        }
    }
    for (k, face) in p.faces.iter().enumerate() {
        if face.cycles.len() != 1 {
            return fail(StandardCertificate::BadFaceBoundary {
                face: k,
                cycles: face.cycles.len(),
            });
        }
    }

    let f = p.faces.len();
    for a in 0..f {
        for b in a + 1..f {
            let shared_edges = p.edges_of_pair(a, b);
            let shared_vertices: Vec<usize> = (0..p.vertices.len())
                .filter(|&v| {
                    p.vertices[v].spheres.contains(&a) && p.vertices[v].spheres.contains(&b)
                })
                .collect();
            let ok = match shared_edges.len() {
                0 => shared_vertices.len() <= 1,
                1 => {
                    let mut ends = p.edges[shared_edges[0]].distinct_endpoints();
                    ends.sort_unstable();
                    ends.len() == 2 && shared_vertices == ends
                }
                _ => false,
            };
            if !ok {
                return fail(StandardCertificate::FaceFace {
                    faces: [a, b],
                    shared_edges,
                    shared_vertices,
                });
            }
        }
    }

    for e1 in 0..p.edges.len() {
        for e2 in e1 + 1..p.edges.len() {
            let a = p.edges[e1].distinct_endpoints();
            let b = p.edges[e2].distinct_endpoints();
            let shared = a.iter().filter(|v| b.contains(v)).count();
            if shared > 1 {
                return fail(StandardCertificate::EdgeEdge { edges: [e1, e2] });
            }
        }
    }

    StandardnessReport {
        standard: true,
        certificate: None,
    }
}

/// Every face bounded by exactly three edges. Simpliciality implies
/// standardness, which is asserted.
pub fn is_simplicial(p: &BallPolyhedron) -> bool {
    let three_sided = p
        .faces
        .iter()
        .all(|face| face.cycles.len() == 1 && face.cycles[0].len() == 3);
    if three_sided {
        assert!(
            is_standard(p).standard,
            "a simplicial ball-polyhedron must be standard"
        );
    }
    three_sided
}
