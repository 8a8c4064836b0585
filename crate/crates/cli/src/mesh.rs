use ballpoly_core::ball::{BallPolyhedron, EdgeKind};
use ballpoly_core::geom::{Point3, Vec3};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// A triangle mesh of the body's boundary: each spherical face patch is
/// tessellated as a triangle fan from its spherical centroid over the
/// boundary arcs, each arc split into `segments` pieces. Arc samples are
/// generated in the arc's own canonical parametrization, so the two faces
/// sharing an arc reuse identical mesh vertices and the result is
/// watertight.
pub struct BoundaryMesh {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum MeshKey {
    Body(usize),
    Arc(usize, usize),
    FaceCenter(usize),
}

pub fn tessellate(p: &BallPolyhedron, segments: usize) -> Result<BoundaryMesh, String> {
    assert!(segments >= 2, "need at least two segments per arc");
    let mut vertices: Vec<Point3> = Vec::new();
    let mut index: BTreeMap<MeshKey, usize> = BTreeMap::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();

    let mut vertex_id = |key: MeshKey, point: Point3, vertices: &mut Vec<Point3>| -> usize {
        *index.entry(key).or_insert_with(|| {
            vertices.push(point);
            vertices.len() - 1
        })
    };

    // Canonical samples along one edge, including both endpoints for arcs.
    let arc_samples = |edge_id: usize| -> Vec<(MeshKey, Point3)> {
        let e = &p.edges[edge_id];
        let axis = e.circle_axis;
        let e1 = axis.any_orthonormal();
        let e2 = axis.cross(e1);
        let at = |phi: f64| e.circle_center + (e1 * phi.cos() + e2 * phi.sin()) * e.circle_radius;
        let angle_of = |q: Point3| -> f64 {
            let d = q - e.circle_center;
            d.dot(e2).atan2(d.dot(e1))
        };
        match e.kind {
            EdgeKind::FullCircle => (0..segments)
                .map(|i| {
                    let phi = 2.0 * PI * i as f64 / segments as f64;
                    (MeshKey::Arc(edge_id, i), at(phi))
                })
                .collect(),
            EdgeKind::Arc { ends } => {
                let start = p.vertices[ends[0]].point;
                let phi0 = angle_of(start);
                let mut out = Vec::with_capacity(segments + 1);
                out.push((MeshKey::Body(ends[0]), start));
                for i in 1..segments {
                    let phi = phi0 + e.central_angle * i as f64 / segments as f64;
                    out.push((MeshKey::Arc(edge_id, i), at(phi)));
                }
                out.push((MeshKey::Body(ends[1]), p.vertices[ends[1]].point));
                out
            }
        }
    };

    for (k, face) in p.faces.iter().enumerate() {
        if face.cycles.is_empty() {
            return Err(format!("face {k} has no boundary; cannot tessellate"));
        }
        if face.cycles.len() != 1 {
            return Err(format!(
                "face {k} has {} boundary cycles",
                face.cycles.len()
            ));
        }
        // Closed boundary polyline in walk order, one entry per sample
        // (the closing point is implicit).
        let mut boundary: Vec<(MeshKey, Point3)> = Vec::new();
        for oe in &face.cycles[0] {
            let mut samples = arc_samples(oe.edge);
            if oe.reversed {
                samples.reverse();
            }
            match p.edges[oe.edge].kind {
                EdgeKind::FullCircle => boundary.extend(samples),
                EdgeKind::Arc { .. } => {
                    samples.pop(); // the next arc starts with this point
                    boundary.extend(samples);
                }
            }
        }
        if boundary.len() < 3 {
            return Err(format!("face {k} boundary has too few samples"));
        }

        // Spherical centroid of the boundary, projected back to the sphere.
        let center = p.centers()[k];
        let mut dir = Vec3::ZERO;
        for (_, q) in &boundary {
            dir += *q - center;
        }
        let dir = dir
            .normalized()
            .ok_or_else(|| format!("face {k} has a degenerate centroid direction"))?;
        let apex_point = center + dir;
        let apex = vertex_id(MeshKey::FaceCenter(k), apex_point, &mut vertices);

        let ids: Vec<usize> = boundary
            .iter()
            .map(|(key, q)| vertex_id(*key, *q, &mut vertices))
            .collect();
        let m = ids.len();
        for t in 0..m {
            triangles.push([apex, ids[t], ids[(t + 1) % m]]);
        }
    }

    Ok(BoundaryMesh {
        vertices,
        triangles,
    })
}

impl BoundaryMesh {
    /// Standard text mesh output.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        out.push_str("# ballpoly boundary mesh\n");
        for v in &self.vertices {
            out.push_str(&format!("v {:.17} {:.17} {:.17}\n", v.x, v.y, v.z));
        }
        for t in &self.triangles {
            out.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
        }
        out
    }

    /// Every undirected edge must border exactly two triangles.
    pub fn is_watertight(&self) -> bool {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for t in &self.triangles {
            for i in 0..3 {
                let a = t[i];
                let b = t[(i + 1) % 3];
                let key = if a < b { (a, b) } else { (b, a) };
                *counts.entry(key).or_default() += 1;
            }
        }
        counts.values().all(|c| *c == 2)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for t in &self.triangles {
            for i in 0..3 {
                let a = t[i];
                let b = t[(i + 1) % 3];
                edges.push(if a < b { (a, b) } else { (b, a) });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }
}
