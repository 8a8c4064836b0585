use super::delaunay::{check_distinct, delaunay_complex};
use super::{
    DelaunayComplex, EdgeExtent, Halfspace, VoronoiCell, VoronoiEdge, VoronoiError, VoronoiFace,
    VoronoiTiling, VoronoiVertex,
};
use crate::geom::{max_margin_direction, CapConstraint, Point3, Tolerance};

/// Build the farthest-point Voronoi tiling of `centers`.
///
/// Cells are written down directly from the half-space definition. The
/// vertex / edge / face skeleton is derived from the Delaunay complex: one
/// vertex per full-dimensional member, one edge per facet (a segment between
/// the circumcenters of its two cells, or a ray into the hull for a boundary
/// facet), one face per pair member. Coplanar configurations have no
/// Voronoi vertices and the skeleton is left empty.
pub fn farthest_voronoi(
    centers: &[Point3],
    tol: &Tolerance,
) -> Result<VoronoiTiling, VoronoiError> {
    if centers.len() < 2 {
        return Err(VoronoiError::TooFewCenters {
            got: centers.len(),
            need: 2,
        });
    }
    check_distinct(centers, tol)?;

    let cells: Vec<VoronoiCell> = (0..centers.len())
        .map(|i| VoronoiCell {
            site: i,
            halfspaces: (0..centers.len())
                .filter(|&j| j != i)
                .map(|j| Halfspace {
                    normal: (centers[j] - centers[i]) * 2.0,
                    offset: centers[j].norm_sq() - centers[i].norm_sq(),
                    other: j,
                })
                .collect(),
            is_empty: !is_extreme(centers, i),
        })
        .collect();

    let mut diameter = 0.0f64;
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            diameter = diameter.max(centers[a].dist(centers[b]));
        }
    }
    let clip_radius = 10.0 * diameter.max(1.0);

    let mut tiling = VoronoiTiling {
        centers: centers.to_vec(),
        cells,
        vertices: Vec::new(),
        edges: Vec::new(),
        faces: Vec::new(),
        clip_radius,
    };

    if centers.len() >= 4 {
        match delaunay_complex(centers, tol) {
            Ok(complex) => attach_skeleton(&mut tiling, &complex)?,
            Err(VoronoiError::CoplanarInput) => {} // no vertices exist
            Err(VoronoiError::AmbiguousCosphericity { detail }) => {
                return Err(VoronoiError::DegenerateTies { detail })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(tiling)
}

/// `c_i` is a vertex of the convex hull exactly when some direction
/// strictly separates it from every other center.
fn is_extreme(centers: &[Point3], i: usize) -> bool {
    let caps: Vec<CapConstraint> = centers
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .filter_map(|(_, c)| {
            (centers[i] - *c)
                .normalized()
                .map(|axis| CapConstraint { axis, min_cos: 0.0 })
        })
        .collect();
    let (_, margin) = max_margin_direction(&caps);
    margin > 1e-12
}

fn attach_skeleton(
    tiling: &mut VoronoiTiling,
    complex: &DelaunayComplex,
) -> Result<(), VoronoiError> {
    tiling.vertices = complex
        .cells
        .iter()
        .map(|cell| VoronoiVertex {
            point: cell.circumcenter,
            region: cell.region.clone(),
            rho: cell.circumradius,
        })
        .collect();

    tiling.edges = complex
        .facets
        .iter()
        .map(|facet| {
            let axis_raw = facet.plane_normal;
            let t_of = |p: Point3| (p - facet.ring_center).dot(axis_raw);
            let extent;
            let axis;
            match facet.cells {
                (a, Some(b)) => {
                    let ta = t_of(complex.cells[a].circumcenter);
                    let tb = t_of(complex.cells[b].circumcenter);
                    // Orient the axis from cell a's vertex toward cell b's.
                    if tb >= ta {
                        axis = axis_raw;
                        extent = EdgeExtent::Segment {
                            ends: [a, b],
                            t0: ta,
                            t1: tb,
                        };
                    } else {
                        axis = -axis_raw;
                        extent = EdgeExtent::Segment {
                            ends: [a, b],
                            t0: -ta,
                            t1: -tb,
                        };
                    }
                }
                (a, None) => {
                    // Boundary facet: the dual edge leaves the owning cell's
                    // circumcenter opposite to the hull-outward normal.
                    let outward = facet
                        .outward
                        .expect("boundary facet carries outward normal");
                    axis = -outward;
                    let t0 = (complex.cells[a].circumcenter - facet.ring_center).dot(axis);
                    extent = EdgeExtent::Ray { start: a, t0 };
                }
            }
            VoronoiEdge {
                region: facet.region.clone(),
                foot: facet.ring_center,
                circumradius: facet.ring_radius,
                axis,
                extent,
            }
        })
        .collect();

    tiling.faces = complex
        .edges
        .iter()
        .map(|member| {
            let [i, j] = member.pair;
            let normal = (tiling.centers[j] - tiling.centers[i]).unit();
            let vertices: Vec<usize> = complex
                .cells
                .iter()
                .enumerate()
                .filter(|(_, c)| c.region.contains(&i) && c.region.contains(&j))
                .map(|(id, _)| id)
                .collect();
            VoronoiFace {
                region: member.pair,
                plane_point: (tiling.centers[i] + tiling.centers[j]) / 2.0,
                plane_normal: normal,
                edges: member.facets.clone(),
                vertices,
                bounded: !member.on_hull,
            }
        })
        .collect();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn regular_tetrahedron(edge: f64) -> Vec<Point3> {
        let s = edge / (2.0 * 2f64.sqrt());
        vec![
            Point3::new(1.0, 1.0, 1.0) * s,
            Point3::new(1.0, -1.0, -1.0) * s,
            Point3::new(-1.0, 1.0, -1.0) * s,
            Point3::new(-1.0, -1.0, 1.0) * s,
        ]
    }

    #[test]
    fn two_points_give_bisector_cells_and_no_vertices() {
        let a = Point3::new(0.0, 0.0, 0.0);
        let b = Point3::new(1.0, 0.0, 0.0);
        let t = farthest_voronoi(&[a, b], &tol()).unwrap();
        assert!(t.vertices.is_empty());
        assert_eq!(t.cells.len(), 2);
        assert!(!t.cells[0].is_empty && !t.cells[1].is_empty);
        // Points beyond the bisector plane x = 1/2 belong to the far cell.
        assert!(t.cells[0].contains(Point3::new(0.9, 3.0, -2.0), 0.0));
        assert!(!t.cells[0].contains(Point3::new(0.1, 3.0, -2.0), 0.0));
        assert!(t.cells[1].contains(Point3::new(0.1, 3.0, -2.0), 0.0));
    }

    #[test]
    fn regular_tetrahedron_has_single_vertex_with_full_region() {
        let pts = regular_tetrahedron(1.0);
        let t = farthest_voronoi(&pts, &tol()).unwrap();
        assert_eq!(t.vertices.len(), 1);
        assert_eq!(t.vertices[0].region, vec![0, 1, 2, 3]);
        assert!((t.vertices[0].rho - (3.0f64 / 8.0).sqrt()).abs() < 1e-12);
        assert!(t.vertices[0].point.approx_eq(Point3::ZERO, 1e-12));
        // Four unbounded dual edges, one per face, all rays from the vertex.
        assert_eq!(t.edges.len(), 4);
        for e in &t.edges {
            match e.extent {
                EdgeExtent::Ray { start, t0 } => {
                    assert_eq!(start, 0);
                    assert!(e.point_at(t0).approx_eq(t.vertices[0].point, 1e-9));
                }
                other => panic!("expected rays, got {other:?}"),
            }
        }
        assert_eq!(t.faces.len(), 6);
        assert!(t.faces.iter().all(|f| !f.bounded));
    }

    #[test]
    fn interior_point_has_empty_cell() {
        let mut pts = regular_tetrahedron(1.0);
        pts.push(Point3::new(0.01, -0.02, 0.015)); // near the centroid
        let t = farthest_voronoi(&pts, &tol()).unwrap();
        assert!(t.cells[4].is_empty);
        assert!(t.cells[..4].iter().all(|c| !c.is_empty));
        // Half-space feasibility oracle: sample no point in cell 4, many in
        // cell 0.
        let mut rng = crate::rng::SplitMix64::new(3);
        let mut hits0 = 0;
        for _ in 0..4000 {
            let x = rng.point_in_cube(3.0);
            assert!(!t.cells[4].contains(x, 0.0), "empty cell contains {x:?}");
            if t.cells[0].contains(x, 0.0) {
                hits0 += 1;
            }
        }
        assert!(hits0 > 0);
    }

    #[test]
    fn ray_directions_point_away_from_the_hull_side() {
        let pts = regular_tetrahedron(1.0);
        let t = farthest_voronoi(&pts, &tol()).unwrap();
        for e in &t.edges {
            // Far along the ray, the region sites must be the farthest ones.
            let far = e.point_at(50.0 + e.t_interval().0);
            let rho = far.dist(pts[e.region[0]]);
            for (m, c) in pts.iter().enumerate() {
                if e.region.contains(&m) {
                    assert!((far.dist(*c) - rho).abs() < 1e-6);
                } else {
                    assert!(far.dist(*c) < rho);
                }
            }
        }
    }

    #[test]
    fn ray_reporting_clips_to_the_reporting_radius() {
        let pts = regular_tetrahedron(1.0);
        let t = farthest_voronoi(&pts, &tol()).unwrap();
        assert!(
            (t.clip_radius - 10.0).abs() < 1e-12,
            "diameter 1 clips at max(1,1)*10"
        );
        for e in &t.edges {
            let (a, b) = t.edge_report_points(e);
            assert!(a.approx_eq(t.vertices[0].point, 1e-9));
            assert!((b.dist(a) - t.clip_radius).abs() < 1e-9);
        }
    }

    #[test]
    fn vertex_distance_dominance_holds() {
        let mut rng = crate::rng::SplitMix64::new(1234);
        for _ in 0..20 {
            let pts: Vec<Point3> = (0..6).map(|_| rng.point_in_cube(1.0)).collect();
            let Ok(t) = farthest_voronoi(&pts, &tol()) else {
                continue;
            };
            for v in &t.vertices {
                for &i in &v.region {
                    assert!((v.point.dist(pts[i]) - v.rho).abs() < 1e-7);
                }
                for (m, c) in pts.iter().enumerate() {
                    if !v.region.contains(&m) {
                        assert!(v.rho - v.point.dist(*c) > -1e-9);
                    }
                }
            }
        }
    }
}
