use super::{DelaunayComplex, EdgeExtent, VoronoiError, VoronoiTiling};
use crate::geom::{Point3, Tolerance, Vec3};

/// One failed correspondence or definitional check.
#[derive(Clone, Debug)]
pub struct CorrespondenceViolation {
    pub kind: &'static str,
    pub detail: String,
}

/// Outcome of verifying the three vertex / edge / face correspondences
/// between a farthest-point Voronoi tiling and the Delaunay complex of the
/// same centers.
#[derive(Clone, Debug, Default)]
pub struct CorrespondenceReport {
    pub violations: Vec<CorrespondenceViolation>,
    pub vertices_checked: usize,
    pub edges_checked: usize,
    pub faces_checked: usize,
    /// Index sets whose witnesses sit inside a tolerance band; recorded
    /// rather than decided.
    pub near_degenerate: Vec<String>,
}

impl CorrespondenceReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn flag(&mut self, kind: &'static str, detail: String) {
        self.violations
            .push(CorrespondenceViolation { kind, detail });
    }
}

/// Verify the bidirectional correspondences: full-dimensional Delaunay
/// members against Voronoi vertices, two-dimensional members against edges,
/// and pair members against faces, re-deriving each claim from the distance
/// definitions at explicit witness points.
pub fn check_correspondences(
    tiling: &VoronoiTiling,
    complex: &DelaunayComplex,
    tol: &Tolerance,
) -> Result<CorrespondenceReport, VoronoiError> {
    if tiling.centers.len() != complex.centers.len()
        || tiling
            .centers
            .iter()
            .zip(&complex.centers)
            .any(|(a, b)| a.dist(*b) > tol.eps_len)
    {
        return Err(VoronoiError::DegenerateTies {
            detail: "tiling and complex were built from different centers".to_string(),
        });
    }
    let centers = &tiling.centers;
    let mut report = CorrespondenceReport::default();

    // (V) full-dimensional members <-> Voronoi vertices.
    for cell in &complex.cells {
        let found = tiling.vertices.iter().find(|v| v.region == cell.region);
        match found {
            None => report.flag(
                "V",
                format!("cell {:?} has no Voronoi vertex partner", cell.region),
            ),
            Some(v) => {
                if v.point.dist(cell.circumcenter) > 16.0 * tol.eps_len {
                    report.flag(
                        "V",
                        format!("vertex/cell {:?} disagree on location", cell.region),
                    );
                }
                if affine_dim(centers, &cell.region, tol) != 3 {
                    report.flag(
                        "V",
                        format!("cell {:?} does not span dimension 3", cell.region),
                    );
                }
            }
        }
    }
    for v in &tiling.vertices {
        report.vertices_checked += 1;
        if !complex.cells.iter().any(|c| c.region == v.region) {
            report.flag(
                "V",
                format!("Voronoi vertex {:?} has no Delaunay partner", v.region),
            );
            continue;
        }
        verify_owner_set(centers, v.point, &v.region, tol, "V", &mut report);
    }

    // (E) two-dimensional members <-> Voronoi edges.
    if complex.facets.len() != tiling.edges.len() {
        report.flag(
            "E",
            format!(
                "facet count {} differs from edge count {}",
                complex.facets.len(),
                tiling.edges.len()
            ),
        );
    }
    for (facet, edge) in complex.facets.iter().zip(&tiling.edges) {
        report.edges_checked += 1;
        if facet.region != edge.region {
            report.flag(
                "E",
                format!(
                    "facet {:?} paired with edge {:?}",
                    facet.region, edge.region
                ),
            );
            continue;
        }
        if affine_dim(centers, &facet.region, tol) != 2 {
            report.flag(
                "E",
                format!("facet {:?} does not span dimension 2", facet.region),
            );
        }
        let witness = edge_relint_witness(edge);
        verify_owner_set(centers, witness, &edge.region, tol, "E", &mut report);
    }

    // (F) pair members <-> Voronoi faces.
    if complex.edges.len() != tiling.faces.len() {
        report.flag(
            "F",
            format!(
                "pair count {} differs from face count {}",
                complex.edges.len(),
                tiling.faces.len()
            ),
        );
    }
    for (member, face) in complex.edges.iter().zip(&tiling.faces) {
        report.faces_checked += 1;
        if member.pair != face.region {
            report.flag(
                "F",
                format!("pair {:?} paired with face {:?}", member.pair, face.region),
            );
            continue;
        }
        match face_relint_witness(tiling, complex, face.region, tol) {
            Some(witness) => {
                let pair = vec![face.region[0], face.region[1]];
                verify_owner_set(centers, witness, &pair, tol, "F", &mut report);
            }
            None => report.flag(
                "F",
                format!(
                    "no relative-interior witness found for face {:?}",
                    face.region
                ),
            ),
        }
    }

    // Near-degenerate bookkeeping: witnesses whose margins sit in the band.
    for v in &tiling.vertices {
        let mut margins: Vec<f64> = centers
            .iter()
            .enumerate()
            .filter(|(m, _)| !v.region.contains(m))
            .map(|(_, c)| v.rho - v.point.dist(*c))
            .collect();
        margins.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if let Some(min) = margins.first() {
            if min.abs() <= 16.0 * tol.eps_len {
                report
                    .near_degenerate
                    .push(format!("vertex {:?} margin {min:.3e}", v.region));
            }
        }
    }

    Ok(report)
}

/// Distances from `point` to the region sites must agree, and every other
/// site must be strictly closer (up to the tolerance band).
fn verify_owner_set(
    centers: &[Point3],
    point: Point3,
    region: &[usize],
    tol: &Tolerance,
    kind: &'static str,
    report: &mut CorrespondenceReport,
) {
    let rho = point.dist(centers[region[0]]);
    for &i in region {
        if (point.dist(centers[i]) - rho).abs() > 32.0 * tol.eps_len {
            report.flag(
                kind,
                format!("witness of {region:?} is not equidistant to site {i}"),
            );
        }
    }
    for (m, c) in centers.iter().enumerate() {
        if region.contains(&m) {
            continue;
        }
        if point.dist(*c) >= rho + 32.0 * tol.eps_len {
            report.flag(
                kind,
                format!("site {m} is farther than the region sites at a witness of {region:?}"),
            );
        }
    }
}

fn affine_dim(centers: &[Point3], region: &[usize], tol: &Tolerance) -> usize {
    let pts: Vec<Point3> = region.iter().map(|&i| centers[i]).collect();
    if pts.len() < 2 {
        return 0;
    }
    let mut basis: Vec<Vec3> = Vec::new();
    for p in &pts[1..] {
        let mut d = *p - pts[0];
        for b in &basis {
            d = d - *b * d.dot(*b);
        }
        if d.norm() > tol.eps_cosp.sqrt() {
            basis.push(d.unit());
        }
    }
    basis.len()
}

/// A point in the relative interior of the edge's extent.
fn edge_relint_witness(edge: &super::VoronoiEdge) -> Point3 {
    match edge.extent {
        EdgeExtent::Segment { t0, t1, .. } => edge.point_at((t0 + t1) / 2.0),
        EdgeExtent::Ray { t0, .. } => edge.point_at(t0 + 1.0),
        EdgeExtent::Line => edge.point_at(0.0),
    }
}

/// A point in the relative interior of the face of `pair`: step from a
/// witness on a bounding Voronoi edge into the face, inside the bisector
/// plane, in the direction that keeps the pair farthest.
fn face_relint_witness(
    tiling: &VoronoiTiling,
    complex: &DelaunayComplex,
    pair: [usize; 2],
    tol: &Tolerance,
) -> Option<Point3> {
    let member = complex.edges.iter().find(|e| e.pair == pair)?;
    let c_i = tiling.centers[pair[0]];
    let plane_normal = (tiling.centers[pair[1]] - c_i).unit();

    for &facet_id in &member.facets {
        let edge = &tiling.edges[facet_id];
        let anchor = edge_relint_witness(edge);
        // In-plane direction orthogonal to the edge axis.
        let u0 = plane_normal.cross(edge.axis);
        let u0 = match u0.normalized() {
            Some(u) => u,
            None => continue,
        };
        for dir in [u0, -u0] {
            // The step must move away from every tied site outside the pair.
            let ok = edge
                .region
                .iter()
                .all(|&t| pair.contains(&t) || dir.dot(tiling.centers[t] - c_i) > tol.eps_len);
            if !ok {
                continue;
            }
            for step in [1e-6, 1e-4, 1e-2] {
                let candidate = anchor + dir * step;
                if owner_set_is(&tiling.centers, candidate, &pair, tol) {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn owner_set_is(centers: &[Point3], point: Point3, pair: &[usize; 2], tol: &Tolerance) -> bool {
    let rho = point.dist(centers[pair[0]]);
    if (point.dist(centers[pair[1]]) - rho).abs() > 32.0 * tol.eps_len {
        return false;
    }
    centers
        .iter()
        .enumerate()
        .filter(|(m, _)| !pair.contains(m))
        .all(|(_, c)| point.dist(*c) < rho - tol.eps_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voronoi::{delaunay_complex, farthest_voronoi};

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
    fn tetrahedron_correspondences_hold() {
        let pts = regular_tetrahedron(1.0);
        let complex = delaunay_complex(&pts, &tol()).unwrap();
        let tiling = farthest_voronoi(&pts, &tol()).unwrap();
        let report = check_correspondences(&tiling, &complex, &tol()).unwrap();
        assert!(report.is_ok(), "violations: {:?}", report.violations);
        assert_eq!(report.vertices_checked, 1);
        assert_eq!(report.faces_checked, 6);
    }

    #[test]
    fn corrupted_complex_is_flagged() {
        let pts = regular_tetrahedron(1.0);
        let mut complex = delaunay_complex(&pts, &tol()).unwrap();
        let tiling = farthest_voronoi(&pts, &tol()).unwrap();
        complex.cells.clear(); // injected fault
        let report = check_correspondences(&tiling, &complex, &tol()).unwrap();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == "V" && v.detail.contains("no Delaunay partner")));
    }

    #[test]
    fn random_convex_position_sets_have_zero_violations() {
        let mut rng = crate::rng::SplitMix64::new(99);
        let mut done = 0;
        while done < 10 {
            let n = 6 + (rng.next_u64() % 3) as usize;
            let pts: Vec<Point3> = (0..n)
                .map(|_| (rng.unit_vector() * 1.0) + rng.point_in_cube(0.08))
                .collect();
            let Ok(complex) = delaunay_complex(&pts, &tol()) else {
                continue;
            };
            let Ok(tiling) = farthest_voronoi(&pts, &tol()) else {
                continue;
            };
            let report = check_correspondences(&tiling, &complex, &tol()).unwrap();
            assert!(report.is_ok(), "violations: {:?}", report.violations);
            done += 1;
        }
    }
}
