use super::vec::Point3;

/// Smallest ball enclosing `points` (Welzl's recursion). Returns the center
/// and radius; the radius is zero for a single point. The input sets handled
/// by this crate are small, so no move-to-front heuristic is needed.
pub fn smallest_enclosing_ball(points: &[Point3]) -> (Point3, f64) {
    assert!(!points.is_empty(), "smallest_enclosing_ball of empty set");
    let mut boundary: Vec<Point3> = Vec::with_capacity(4);
    welzl(points, points.len(), &mut boundary)
}

fn welzl(points: &[Point3], n: usize, boundary: &mut Vec<Point3>) -> (Point3, f64) {
    if n == 0 || boundary.len() == 4 {
        return ball_from_boundary(boundary);
    }
    let p = points[n - 1];
    let (c, r) = welzl(points, n - 1, boundary);
    if p.dist(c) <= r * (1.0 + 1e-12) + 1e-14 {
        return (c, r);
    }
    boundary.push(p);
    let result = welzl(points, n - 1, boundary);
    boundary.pop();
    result
}

fn ball_from_boundary(b: &[Point3]) -> (Point3, f64) {
    match b.len() {
        0 => (Point3::ZERO, 0.0),
        1 => (b[0], 0.0),
        2 => {
            let c = (b[0] + b[1]) / 2.0;
            (c, c.dist(b[0]))
        }
        3 => circumscribed_circle_ball(b[0], b[1], b[2]),
        4 => circumscribed_sphere_ball(b[0], b[1], b[2], b[3]),
        _ => unreachable!("at most four boundary points"),
    }
}

/// Smallest ball with three given boundary points: the diametral ball of
/// their circumscribed circle (center in the triangle's plane).
fn circumscribed_circle_ball(a: Point3, b: Point3, c: Point3) -> (Point3, f64) {
    let u = b - a;
    let v = c - a;
    let n = u.cross(v);
    let nn = n.norm_sq();
    if nn <= 1e-28 {
        // Near-collinear support: fall back to the widest pair.
        let mut best = (a, 0.0f64);
        for (p, q) in [(a, b), (a, c), (b, c)] {
            let r = p.dist(q) / 2.0;
            if r > best.1 {
                best = ((p + q) / 2.0, r);
            }
        }
        return best;
    }
    // Standard in-plane circumcenter formula.
    let offset = (n.cross(u) * v.norm_sq() + v.cross(n) * u.norm_sq()) / (2.0 * nn);
    let center = a + offset;
    (center, center.dist(a))
}

fn circumscribed_sphere_ball(a: Point3, b: Point3, c: Point3, d: Point3) -> (Point3, f64) {
    let u = b - a;
    let v = c - a;
    let w = d - a;
    let det = u.dot(v.cross(w));
    if det.abs() <= 1e-20 {
        return circumscribed_circle_ball(a, b, c);
    }
    let rhs = [u.norm_sq() / 2.0, v.norm_sq() / 2.0, w.norm_sq() / 2.0];
    let offset = (v.cross(w) * rhs[0] + w.cross(u) * rhs[1] + u.cross(v) * rhs[2]) / det;
    let center = a + offset;
    (center, center.dist(a))
}

/// Largest distance from `q` to any of `points`.
pub fn max_distance(q: Point3, points: &[Point3]) -> f64 {
    points.iter().map(|p| p.dist(q)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::centroid;
    use crate::rng::SplitMix64;

    #[test]
    fn pair_gives_diametral_ball() {
        let (c, r) =
            smallest_enclosing_ball(&[Point3::new(0.0, 0.0, 0.0), Point3::new(2.0, 0.0, 0.0)]);
        assert!(c.approx_eq(Point3::new(1.0, 0.0, 0.0), 1e-12));
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn enclosing_ball_contains_everything_and_is_minimal_vs_sampling() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..50 {
            let pts: Vec<Point3> = (0..10).map(|_| rng.point_in_cube(1.0)).collect();
            let (c, r) = smallest_enclosing_ball(&pts);
            for p in &pts {
                assert!(p.dist(c) <= r + 1e-9);
            }
            // No sampled center does strictly better.
            let best_sampled = (0..200)
                .map(|_| {
                    let q = centroid(&pts) + rng.point_in_cube(0.5);
                    max_distance(q, &pts)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(r <= best_sampled + 1e-9);
        }
    }
}
