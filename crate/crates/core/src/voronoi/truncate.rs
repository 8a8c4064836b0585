use super::{
    DelaunayComplex, TruncatedComplex, TruncatedTiling, VoronoiError, VoronoiFace, VoronoiTiling,
};
use crate::geom::{
    max_margin_direction, smallest_enclosing_ball, CapConstraint, Point3, Tolerance,
};

/// Intersect every Voronoi cell with its own unit ball. Since a point of
/// `V_i` within distance one of `c_i` is within distance one of every site,
/// the truncated cell equals `V_i` intersected with the ball-polyhedron.
pub fn truncate(tiling: &VoronoiTiling, tol: &Tolerance) -> Result<TruncatedTiling, VoronoiError> {
    require_nonempty_interior(&tiling.centers, tol)?;

    let vertex_in_p: Vec<bool> = tiling
        .vertices
        .iter()
        .map(|v| v.rho <= 1.0 + tol.eps_len)
        .collect();

    let mut cell_nonempty = Vec::with_capacity(tiling.cells.len());
    let mut cell_witness = Vec::with_capacity(tiling.cells.len());
    for cell in &tiling.cells {
        let witness = if cell.is_empty {
            None
        } else {
            truncated_cell_witness(tiling, cell.site, tol)
        };
        cell_nonempty.push(witness.is_some());
        cell_witness.push(witness);
    }

    Ok(TruncatedTiling {
        centers: tiling.centers.clone(),
        vertex_in_p,
        cell_nonempty,
        cell_witness,
    })
}

/// Restrict the Delaunay complex to members with a witness point in the
/// ball-polyhedron. A full-dimensional member survives exactly when its
/// Voronoi vertex lies in the body (`rho <= 1`); lower members survive when
/// the minimal site distance over their dual Voronoi stratum is at most one.
pub fn truncated_delaunay(
    complex: &DelaunayComplex,
    tiling: &VoronoiTiling,
    tol: &Tolerance,
) -> Result<TruncatedComplex, VoronoiError> {
    require_nonempty_interior(&tiling.centers, tol)?;
    let eps = tol.eps_len;

    let mut cell_survives = Vec::with_capacity(complex.cells.len());
    let mut cell_degenerate = Vec::with_capacity(complex.cells.len());
    for cell in &complex.cells {
        cell_survives.push(cell.circumradius <= 1.0 + eps);
        cell_degenerate.push((cell.circumradius - 1.0).abs() <= eps);
    }

    let mut facet_survives = Vec::with_capacity(complex.facets.len());
    let mut facet_degenerate = Vec::with_capacity(complex.facets.len());
    for (facet_id, _) in complex.facets.iter().enumerate() {
        let edge = &tiling.edges[facet_id];
        let (lo, hi) = edge.t_interval();
        let t_star = 0.0f64.clamp(lo, hi);
        let min_rho = edge.rho_at(t_star);
        facet_survives.push(min_rho <= 1.0 + eps);
        facet_degenerate.push((min_rho - 1.0).abs() <= eps);
    }

    let mut edge_survives = Vec::with_capacity(complex.edges.len());
    let mut edge_degenerate = Vec::with_capacity(complex.edges.len());
    for (pair_id, _) in complex.edges.iter().enumerate() {
        let face = &tiling.faces[pair_id];
        let msd = face_min_site_distance(tiling, face, tol);
        edge_survives.push(msd <= 1.0 + eps);
        edge_degenerate.push((msd - 1.0).abs() <= eps);
    }

    Ok(TruncatedComplex {
        cell_survives,
        facet_survives,
        edge_survives,
        cell_degenerate,
        facet_degenerate,
        edge_degenerate,
    })
}

fn require_nonempty_interior(centers: &[Point3], tol: &Tolerance) -> Result<(), VoronoiError> {
    let (_, radius) = smallest_enclosing_ball(centers);
    if radius > 1.0 - tol.eps_len {
        return Err(VoronoiError::EmptyIntersection);
    }
    Ok(())
}

/// Smallest distance from the face's first site to any point of the face.
/// The site projects onto the midpoint of the pair, so the minimizer over
/// the face agrees with the closest face point to that midpoint; when the
/// midpoint fails a half-space test the minimum sits on a boundary edge.
pub(super) fn face_min_site_distance(
    tiling: &VoronoiTiling,
    face: &VoronoiFace,
    tol: &Tolerance,
) -> f64 {
    let [i, j] = face.region;
    let c_i = tiling.centers[i];
    let m = face.plane_point;

    let inside = tiling.cells[i]
        .halfspaces
        .iter()
        .filter(|h| h.other != j)
        .all(|h| h.contains(m, tol.eps_len));
    if inside {
        return m.dist(c_i);
    }

    let mut best = f64::INFINITY;
    for &edge_id in &face.edges {
        let edge = &tiling.edges[edge_id];
        let (lo, hi) = edge.t_interval();
        let t_m = (m - edge.foot).dot(edge.axis);
        let q = edge.point_at(t_m.clamp(lo, hi));
        best = best.min(q.dist(c_i));
    }
    best
}

/// A point of `V_i` inside the ball-polyhedron, if one exists. Checked in
/// the order: a strict interior point of the boundary face on the site's
/// sphere, then Voronoi vertices, edges and faces incident to the site (the
/// maximum of the site distance over the truncated cell is attained on one
/// of those strata, so the search is exhaustive).
fn truncated_cell_witness(tiling: &VoronoiTiling, site: usize, tol: &Tolerance) -> Option<Point3> {
    let c = tiling.centers[site];
    let caps: Vec<CapConstraint> = tiling
        .centers
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != site)
        .map(|(_, other)| {
            let d = c.dist(*other);
            CapConstraint {
                axis: (*other - c) / d,
                min_cos: d / 2.0,
            }
        })
        .collect();
    let (dir, margin) = max_margin_direction(&caps);
    if margin > tol.eps_len {
        return Some(c + dir);
    }

    for v in &tiling.vertices {
        if v.region.contains(&site) && v.rho <= 1.0 + tol.eps_len {
            return Some(v.point);
        }
    }
    for e in &tiling.edges {
        if e.region.contains(&site) {
            let (lo, hi) = e.t_interval();
            let t_star = 0.0f64.clamp(lo, hi);
            if e.rho_at(t_star) <= 1.0 + tol.eps_len {
                return Some(e.point_at(t_star));
            }
        }
    }
    for f in &tiling.faces {
        if f.region.contains(&site) {
            let msd = face_min_site_distance(tiling, f, tol);
            if msd <= 1.0 + tol.eps_len {
                // Recover the minimizing point for the witness.
                let m = f.plane_point;
                if m.dist(tiling.centers[f.region[0]]) <= msd + tol.eps_len {
                    return Some(m);
                }
                let mut best = (f64::INFINITY, m);
                for &edge_id in &f.edges {
                    let edge = &tiling.edges[edge_id];
                    let (lo, hi) = edge.t_interval();
                    let t_m = (m - edge.foot).dot(edge.axis);
                    let q = edge.point_at(t_m.clamp(lo, hi));
                    let d = q.dist(tiling.centers[f.region[0]]);
                    if d < best.0 {
                        best = (d, q);
                    }
                }
                return Some(best.1);
            }
        }
    }
    None
}
