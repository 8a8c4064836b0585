//! Oracle tests for the farthest-point Voronoi / Delaunay machinery: the
//! witness-sphere brute force, the hull-vertex criterion, cell volumes
//! against the hull volume, and the vertex / edge / face correspondences on
//! random inputs.

use ballpoly_core::geom::{centroid, Point3, Tolerance};
use ballpoly_core::rng::SplitMix64;
use ballpoly_core::voronoi::{check_correspondences, delaunay_complex, farthest_voronoi};

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Independent circumsphere: Gaussian elimination on the three bisector
/// equations, no shared code with the kernel's Cramer solve.
fn oracle_circumsphere(p: [Point3; 4]) -> Option<(Point3, f64)> {
    let mut a = [[0.0f64; 4]; 3];
    for r in 0..3 {
        let d = p[r + 1] - p[0];
        a[r][0] = d.x;
        a[r][1] = d.y;
        a[r][2] = d.z;
        // Bisector equation in absolute coordinates: <x, d> = (|p|^2 - |p0|^2)/2.
        a[r][3] = (p[r + 1].norm_sq() - p[0].norm_sq()) / 2.0;
    }
    // Forward elimination with partial pivoting.
    for col in 0..3 {
        let pivot =
            (col..3).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        a.swap(col, pivot);
        if a[col][col].abs() < 1e-12 {
            return None;
        }
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut s = a[row][3];
        for k in row + 1..3 {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    let center = Point3::new(x[0], x[1], x[2]);
    Some((center, center.dist(p[0])))
}

/// Brute-force farthest-point Delaunay: a 4-subset is a cell exactly when
/// every other center lies strictly inside its circumsphere; facets and
/// pair members close the family downward.
fn oracle_families(
    centers: &[Point3],
) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<[usize; 2]>)> {
    let n = centers.len();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let (c, r) =
                        oracle_circumsphere([centers[i], centers[j], centers[k], centers[l]])?;
                    let subset = [i, j, k, l];
                    let mut ok = true;
                    for (m, p) in centers.iter().enumerate() {
                        if subset.contains(&m) {
                            continue;
                        }
                        let gap = r - p.dist(c);
                        if gap.abs() < 1e-7 {
                            // Too close to cospherical to call: the caller
                            // rejects this draw.
                            return None;
                        }
                        if gap < 0.0 {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        cells.push(vec![i, j, k, l]);
                    }
                }
            }
        }
    }
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut pairs: Vec<[usize; 2]> = Vec::new();
    for cell in &cells {
        for skip in 0..4 {
            let mut tri = cell.clone();
            tri.remove(skip);
            if !facets.contains(&tri) {
                facets.push(tri);
            }
        }
        for a in 0..4 {
            for b in a + 1..4 {
                let pair = [cell[a], cell[b]];
                if !pairs.contains(&pair) {
                    pairs.push(pair);
                }
            }
        }
    }
    cells.sort();
    facets.sort();
    pairs.sort();
    Some((cells, facets, pairs))
}

/// Sample centers in general position: in convex position around a sphere
/// with jittered radii, rejecting draws the oracle deems too close to a
/// cosphericity.
fn sample_general_position(rng: &mut SplitMix64, n: usize) -> Vec<Point3> {
    loop {
        let pts: Vec<Point3> = (0..n)
            .map(|_| rng.unit_vector() * rng.range(0.75, 1.2))
            .collect();
        if oracle_families(&pts).is_some() {
            return pts;
        }
    }
}

#[test]
fn complex_matches_brute_force_oracle_exactly() {
    let mut rng = SplitMix64::new(2024);
    for round in 0..25 {
        let n = 4 + (rng.next_u64() % 5) as usize;
        let pts = sample_general_position(&mut rng, n);
        let oracle = oracle_families(&pts).unwrap();
        let complex = delaunay_complex(&pts, &tol()).unwrap();
        let got = complex.index_families();
        assert_eq!(got, oracle, "round {round}, n {n}");
    }
}

#[test]
fn correspondences_hold_on_random_inputs() {
    let mut rng = SplitMix64::new(31);
    for _ in 0..15 {
        let n = 5 + (rng.next_u64() % 4) as usize;
        let pts = sample_general_position(&mut rng, n);
        let complex = delaunay_complex(&pts, &tol()).unwrap();
        let tiling = farthest_voronoi(&pts, &tol()).unwrap();
        let report = check_correspondences(&tiling, &complex, &tol()).unwrap();
        assert!(report.is_ok(), "violations: {:?}", report.violations);
    }
}

#[test]
fn empty_cells_are_exactly_the_non_hull_vertices() {
    // Hull oracle: a point is a hull vertex when some supporting plane
    // through three others leaves it strictly outside... equivalently when
    // it is NOT in the convex hull of the rest, tested by facet
    // enumeration of that hull.
    fn in_hull_of_others(centers: &[Point3], idx: usize) -> bool {
        let others: Vec<Point3> = centers
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, p)| *p)
            .collect();
        let q = centers[idx];
        let inner = centroid(&others);
        let m = others.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let nrm = (others[b] - others[a]).cross(others[c] - others[a]);
                    if nrm.norm() < 1e-12 {
                        continue;
                    }
                    let side = |p: Point3| -> f64 { nrm.dot(p - others[a]) };
                    // Supporting plane of the others' hull.
                    let signs: Vec<f64> = others.iter().map(|p| side(*p)).collect();
                    let all_le = signs.iter().all(|s| *s <= 1e-10);
                    let all_ge = signs.iter().all(|s| *s >= -1e-10);
                    if !(all_le || all_ge) {
                        continue;
                    }
                    let inner_side = side(inner);
                    let q_side = side(q);
                    if inner_side.abs() < 1e-12 {
                        continue;
                    }
                    if q_side.signum() != inner_side.signum() && q_side.abs() > 1e-10 {
                        return false; // separated from the hull
                    }
                }
            }
        }
        true
    }

    let mut rng = SplitMix64::new(7);
    for _ in 0..10 {
        // A convex-position cloud plus a couple of interior points.
        let mut pts = sample_general_position(&mut rng, 6);
        pts.push(centroid(&pts) + rng.point_in_cube(0.02));
        let Ok(tiling) = farthest_voronoi(&pts, &tol()) else {
            continue;
        };
        for (i, cell) in tiling.cells.iter().enumerate() {
            let interior = in_hull_of_others(&pts, i);
            assert_eq!(
                cell.is_empty, interior,
                "cell {i}: empty={} but interior={}",
                cell.is_empty, interior
            );
        }
    }
}

#[test]
fn perturbed_cube_cell_volumes_sum_to_hull_volume() {
    let mut rng = SplitMix64::new(11);
    let mut pts = Vec::new();
    for dx in [-0.5, 0.5] {
        for dy in [-0.5, 0.5] {
            for dz in [-0.5, 0.5] {
                pts.push(Point3::new(dx, dy, dz) + rng.point_in_cube(0.04));
            }
        }
    }
    let complex = delaunay_complex(&pts, &tol()).unwrap();

    // Cell volumes via centroid fans over the facet polygons.
    let mut cell_total = 0.0;
    for (cell_id, cell) in complex.cells.iter().enumerate() {
        let cell_pts: Vec<Point3> = cell.region.iter().map(|&i| pts[i]).collect();
        let apex = centroid(&cell_pts);
        for facet in &complex.facets {
            if facet.cells.0 != cell_id && facet.cells.1 != Some(cell_id) {
                continue;
            }
            let poly: Vec<Point3> = facet.polygon.iter().map(|&i| pts[i]).collect();
            for t in 1..poly.len() - 1 {
                let v = (poly[t] - poly[0])
                    .cross(poly[t + 1] - poly[0])
                    .dot(apex - poly[0])
                    .abs()
                    / 6.0;
                cell_total += v;
            }
        }
    }

    // Hull volume oracle: supporting-plane facet enumeration plus a fan
    // from the global centroid.
    let inner = centroid(&pts);
    let mut hull_total = 0.0;
    let n = pts.len();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let nrm = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
                if nrm.norm() < 1e-12 {
                    continue;
                }
                let signs: Vec<f64> = pts.iter().map(|p| nrm.dot(*p - pts[a])).collect();
                let all_le = signs.iter().all(|s| *s <= 1e-9);
                let all_ge = signs.iter().all(|s| *s >= -1e-9);
                if !(all_le || all_ge) {
                    continue;
                }
                let mut face: Vec<usize> = (0..n).filter(|&i| signs[i].abs() <= 1e-9).collect();
                face.sort_unstable();
                if face.len() < 3 || seen.contains(&face) {
                    continue;
                }
                seen.push(face.clone());
                // Order the coplanar face points and fan from the centroid.
                let axis = nrm.unit();
                let e1 = axis.any_orthonormal();
                let e2 = axis.cross(e1);
                let fc = centroid(&face.iter().map(|&i| pts[i]).collect::<Vec<_>>());
                let mut ordered: Vec<Point3> = face.iter().map(|&i| pts[i]).collect();
                ordered.sort_by(|p, q| {
                    let pa = (*p - fc).dot(e2).atan2((*p - fc).dot(e1));
                    let qa = (*q - fc).dot(e2).atan2((*q - fc).dot(e1));
                    pa.partial_cmp(&qa).unwrap()
                });
                for t in 1..ordered.len() - 1 {
                    hull_total += (ordered[t] - ordered[0])
                        .cross(ordered[t + 1] - ordered[0])
                        .dot(inner - ordered[0])
                        .abs()
                        / 6.0;
                }
            }
        }
    }

    assert!(
        (cell_total - hull_total).abs() < 1e-9,
        "cells {cell_total} vs hull {hull_total}"
    );
}
