use super::{DelaunayCell, DelaunayComplex, DelaunayEdgeMember, DelaunayFacet, VoronoiError};
use crate::geom::{circumsphere, Point3, Tolerance, Vec3};
use std::collections::BTreeMap;

/// Build the farthest-point Delaunay complex of `centers` by witness-sphere
/// search: a subset is a cell exactly when its points lie on a common sphere
/// with every other center strictly inside. Cospherical subsets within the
/// cosphericity tolerance are kept as single polytopal cells with the merged
/// index set rather than being triangulated.
pub fn delaunay_complex(
    centers: &[Point3],
    tol: &Tolerance,
) -> Result<DelaunayComplex, VoronoiError> {
    let n = centers.len();
    if n < 4 {
        return Err(VoronoiError::TooFewCenters { got: n, need: 4 });
    }
    check_distinct(centers, tol)?;

    let mut cells_by_region: BTreeMap<Vec<usize>, DelaunayCell> = BTreeMap::new();
    let mut any_independent = false;

    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let Ok(sphere) =
                        circumsphere(centers[i], centers[j], centers[k], centers[l], tol)
                    else {
                        continue;
                    };
                    any_independent = true;
                    let mut region = vec![i, j, k, l];
                    let mut rejected = false;
                    for (m, c) in centers.iter().enumerate() {
                        if region.contains(&m) {
                            continue;
                        }
                        let slack = sphere.radius - c.dist(sphere.center);
                        if slack < -tol.eps_cosp {
                            rejected = true;
                            break;
                        }
                        if slack <= tol.eps_cosp {
                            region.push(m); // cospherical: merge
                        }
                    }
                    if rejected {
                        continue;
                    }
                    region.sort_unstable();
                    cells_by_region.entry(region).or_insert(DelaunayCell {
                        region: Vec::new(),
                        circumcenter: sphere.center,
                        circumradius: sphere.radius,
                    });
                }
            }
        }
    }

    if !any_independent {
        return Err(VoronoiError::CoplanarInput);
    }

    let mut cells: Vec<DelaunayCell> = cells_by_region
        .into_iter()
        .map(|(region, mut cell)| {
            cell.region = region;
            cell
        })
        .collect();

    // Distinct cells sharing four or more sites would have to share their
    // witness sphere; the merge above should have united them. Seeing both
    // means the input sits inside the cosphericity band.
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            let shared = intersection_size(&cells[a].region, &cells[b].region);
            if shared >= 4 {
                return Err(VoronoiError::AmbiguousCosphericity {
                    detail: format!(
                        "cells {:?} and {:?} share {shared} sites",
                        cells[a].region, cells[b].region
                    ),
                });
            }
        }
    }

    if cells.is_empty() {
        // Non-coplanar input always admits at least one cell.
        return Err(VoronoiError::AmbiguousCosphericity {
            detail: "no witness sphere found for any subset".to_string(),
        });
    }
    cells.sort_by(|a, b| a.region.cmp(&b.region));

    let facets = build_facets(centers, &cells, tol)?;
    let edges = build_edges(&facets);

    let mut hull_vertices: Vec<usize> = Vec::new();
    for cell in &cells {
        for &i in &cell.region {
            if !hull_vertices.contains(&i) {
                hull_vertices.push(i);
            }
        }
    }
    hull_vertices.sort_unstable();

    Ok(DelaunayComplex {
        centers: centers.to_vec(),
        cells,
        facets,
        edges,
        hull_vertices,
    })
}

pub(super) fn check_distinct(centers: &[Point3], tol: &Tolerance) -> Result<(), VoronoiError> {
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            if centers[a].dist(centers[b]) <= tol.eps_len {
                return Err(VoronoiError::DuplicateCenters { a, b });
            }
        }
    }
    Ok(())
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Enumerate the two-dimensional faces of every cell. For a four-site cell
/// these are its triangles; for a merged cospherical cell the facets of the
/// inscribed polytope are found by supporting-plane search over site triples.
fn build_facets(
    centers: &[Point3],
    cells: &[DelaunayCell],
    tol: &Tolerance,
) -> Result<Vec<DelaunayFacet>, VoronoiError> {
    let mut by_region: BTreeMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    // region -> (owning cell ids, polygon order)

    for (cell_id, cell) in cells.iter().enumerate() {
        let facet_regions = cell_facets(centers, &cell.region, tol)?;
        for region in facet_regions {
            let entry = by_region
                .entry(region.clone())
                .or_insert_with(|| (Vec::new(), region));
            if !entry.0.contains(&cell_id) {
                entry.0.push(cell_id);
            }
        }
    }

    let mut facets = Vec::new();
    for (region, (cell_ids, _)) in by_region {
        if cell_ids.len() > 2 {
            return Err(VoronoiError::AmbiguousCosphericity {
                detail: format!("facet {region:?} is shared by {} cells", cell_ids.len()),
            });
        }
        let pts: Vec<Point3> = region.iter().map(|&i| centers[i]).collect();
        let plane_normal =
            facet_plane_normal(&pts).ok_or_else(|| VoronoiError::AmbiguousCosphericity {
                detail: format!("facet {region:?} is degenerate"),
            })?;
        let (ring_center, ring_radius) = in_plane_circumcircle(&pts, plane_normal);
        for p in &pts {
            if (p.dist(ring_center) - ring_radius).abs() > 16.0 * tol.eps_len {
                return Err(VoronoiError::AmbiguousCosphericity {
                    detail: format!("facet {region:?} sites are not cocircular"),
                });
            }
        }
        let polygon = order_polygon(centers, &region, ring_center, plane_normal);

        let cell0 = cell_ids[0];
        let cell1 = cell_ids.get(1).copied();
        let outward = if cell1.is_none() {
            // Boundary facet: point away from the owning cell's off-plane sites.
            let cell = &cells[cell0];
            let mut side = 0.0;
            for &m in &cell.region {
                if !region.contains(&m) {
                    side += plane_normal.dot(centers[m] - ring_center);
                }
            }
            Some(if side > 0.0 {
                -plane_normal
            } else {
                plane_normal
            })
        } else {
            None
        };

        facets.push(DelaunayFacet {
            region,
            polygon,
            cells: (cell0, cell1),
            plane_normal,
            ring_center,
            ring_radius,
            outward,
        });
    }
    Ok(facets)
}

/// Facet index sets of one cell's inscribed polytope.
fn cell_facets(
    centers: &[Point3],
    region: &[usize],
    tol: &Tolerance,
) -> Result<Vec<Vec<usize>>, VoronoiError> {
    if region.len() == 4 {
        let mut out = Vec::with_capacity(4);
        for skip in 0..4 {
            let mut r: Vec<usize> = region.to_vec();
            r.remove(skip);
            out.push(r);
        }
        return Ok(out);
    }
    // Supporting-plane enumeration over triples of the cell's sites.
    let pts: Vec<Point3> = region.iter().map(|&i| centers[i]).collect();
    let m = pts.len();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let nrm = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
                if nrm.norm() <= tol.eps_cosp {
                    continue;
                }
                let nrm = nrm.unit();
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                let dists: Vec<f64> = pts.iter().map(|p| nrm.dot(*p - pts[a])).collect();
                for &d in &dists {
                    lo = lo.min(d);
                    hi = hi.max(d);
                }
                let band = 16.0 * tol.eps_len;
                let supporting = lo >= -band || hi <= band;
                if !supporting {
                    continue;
                }
                let mut facet: Vec<usize> = (0..m)
                    .filter(|&i| dists[i].abs() <= band)
                    .map(|i| region[i])
                    .collect();
                facet.sort_unstable();
                if facet.len() >= 3 && !found.contains(&facet) {
                    found.push(facet);
                }
            }
        }
    }
    if found.len() < 4 {
        return Err(VoronoiError::AmbiguousCosphericity {
            detail: format!("cell {region:?} has fewer than four facets"),
        });
    }
    Ok(found)
}

fn facet_plane_normal(pts: &[Point3]) -> Option<Vec3> {
    for b in 1..pts.len() {
        for c in b + 1..pts.len() {
            let n = (pts[b] - pts[0]).cross(pts[c] - pts[0]);
            if n.norm() > 1e-12 {
                return Some(n.unit());
            }
        }
    }
    None
}

/// Circumcenter of cocircular points within their plane.
fn in_plane_circumcircle(pts: &[Point3], normal: Vec3) -> (Point3, f64) {
    let (a, b, c) = (pts[0], pts[1], pts[2]);
    let u = b - a;
    let v = c - a;
    let n = u.cross(v);
    let nn = n.norm_sq().max(1e-300);
    let offset = (n.cross(u) * v.norm_sq() + v.cross(n) * u.norm_sq()) / (2.0 * nn);
    let center = a + offset;
    let _ = normal;
    (center, center.dist(a))
}

fn order_polygon(
    centers: &[Point3],
    region: &[usize],
    ring_center: Point3,
    normal: Vec3,
) -> Vec<usize> {
    let e1 = normal.any_orthonormal();
    let e2 = normal.cross(e1);
    let mut with_angle: Vec<(f64, usize)> = region
        .iter()
        .map(|&i| {
            let d = centers[i] - ring_center;
            (d.dot(e2).atan2(d.dot(e1)), i)
        })
        .collect();
    with_angle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    with_angle.into_iter().map(|(_, i)| i).collect()
}

/// Pair members: polygon edges of the facets, deduplicated.
fn build_edges(facets: &[DelaunayFacet]) -> Vec<DelaunayEdgeMember> {
    let mut by_pair: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (facet_id, facet) in facets.iter().enumerate() {
        let poly = &facet.polygon;
        for w in 0..poly.len() {
            let a = poly[w];
            let b = poly[(w + 1) % poly.len()];
            let pair = if a < b { [a, b] } else { [b, a] };
            let entry = by_pair.entry(pair).or_default();
            if !entry.contains(&facet_id) {
                entry.push(facet_id);
            }
        }
    }
    by_pair
        .into_iter()
        .map(|(pair, facet_ids)| {
            let on_hull = facet_ids.iter().any(|&f| facets[f].is_boundary());
            DelaunayEdgeMember {
                pair,
                facets: facet_ids,
                on_hull,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Tolerance;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn regular_tetrahedron(edge: f64) -> Vec<Point3> {
        // Alternate cube vertices have pairwise distance 2*sqrt(2) at scale 1.
        let s = edge / (2.0 * 2f64.sqrt());
        vec![
            Point3::new(1.0, 1.0, 1.0) * s,
            Point3::new(1.0, -1.0, -1.0) * s,
            Point3::new(-1.0, 1.0, -1.0) * s,
            Point3::new(-1.0, -1.0, 1.0) * s,
        ]
    }

    #[test]
    fn regular_tetrahedron_is_one_cell() {
        let pts = regular_tetrahedron(1.0);
        assert!((pts[0].dist(pts[1]) - 1.0).abs() < 1e-12);
        let d = delaunay_complex(&pts, &tol()).unwrap();
        assert_eq!(d.cells.len(), 1);
        assert_eq!(d.cells[0].region, vec![0, 1, 2, 3]);
        assert!((d.cells[0].circumradius - (3.0f64 / 8.0).sqrt()).abs() < 1e-12);
        assert_eq!(d.facets.len(), 4);
        assert!(d.facets.iter().all(|f| f.is_boundary()));
        assert_eq!(d.edges.len(), 6);
        assert!(d.edges.iter().all(|e| e.on_hull));
        assert_eq!(d.hull_vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn shallow_bipyramid_splits_along_its_equator() {
        // A wide triangle with two shallow apexes: the witness sphere through
        // the triangle and one apex swallows the other apex, so the complex
        // is two tetrahedra sharing the triangle.
        let r = 2.0;
        let pts = vec![
            Point3::new(r, 0.0, 0.0),
            Point3::new(-r / 2.0, r * 3f64.sqrt() / 2.0, 0.0),
            Point3::new(-r / 2.0, -r * 3f64.sqrt() / 2.0, 0.01),
            Point3::new(0.03, -0.02, 0.3),
            Point3::new(-0.01, 0.04, -0.35),
        ];
        let d = delaunay_complex(&pts, &tol()).unwrap();
        let (cells, facets, _) = d.index_families();
        assert_eq!(cells, vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]]);
        assert!(facets.contains(&vec![0, 1, 2]));
        let interior: Vec<_> = d.facets.iter().filter(|f| !f.is_boundary()).collect();
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].region, vec![0, 1, 2]);
    }

    #[test]
    fn tall_bipyramid_splits_around_its_diagonal() {
        // The opposite regime: a small equator with far apexes tiles around
        // the apex-apex diagonal, which becomes an interior pair member.
        let r = 0.4;
        let pts = vec![
            Point3::new(r, 0.0, 0.0),
            Point3::new(-r / 2.0, r * 3f64.sqrt() / 2.0, 0.013),
            Point3::new(-r / 2.0, -r * 3f64.sqrt() / 2.0, -0.007),
            Point3::new(0.01, -0.02, 1.1),
            Point3::new(-0.02, 0.03, -1.2),
        ];
        let d = delaunay_complex(&pts, &tol()).unwrap();
        assert_eq!(d.cells.len(), 3);
        let diagonal = d
            .edges
            .iter()
            .find(|e| e.pair == [3, 4])
            .expect("diagonal member");
        assert!(!diagonal.on_hull);
        assert!(d
            .edges
            .iter()
            .filter(|e| e.pair != [3, 4])
            .all(|e| e.on_hull));
    }

    #[test]
    fn cospherical_cube_merges_into_one_cell() {
        let mut pts = Vec::new();
        for dx in [-0.5, 0.5] {
            for dy in [-0.5, 0.5] {
                for dz in [-0.5, 0.5] {
                    pts.push(Point3::new(dx, dy, dz));
                }
            }
        }
        let d = delaunay_complex(&pts, &tol()).unwrap();
        assert_eq!(d.cells.len(), 1);
        assert_eq!(d.cells[0].region, (0..8).collect::<Vec<_>>());
        assert_eq!(
            d.facets.len(),
            6,
            "cube cell should expose six square facets"
        );
        assert!(d.facets.iter().all(|f| f.region.len() == 4));
        assert_eq!(d.edges.len(), 12);
    }

    #[test]
    fn coplanar_input_is_rejected() {
        let pts = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(1.0, 1.0, 0.0),
            Point3::new(0.3, 0.7, 0.0),
        ];
        match delaunay_complex(&pts, &tol()) {
            Err(VoronoiError::CoplanarInput) => {}
            other => panic!("expected CoplanarInput, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_centers_are_rejected() {
        let mut pts = regular_tetrahedron(1.0);
        pts.push(pts[2]);
        match delaunay_complex(&pts, &tol()) {
            Err(VoronoiError::DuplicateCenters { .. }) => {}
            other => panic!("expected DuplicateCenters, got {other:?}"),
        }
    }
}
