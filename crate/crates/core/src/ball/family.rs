use super::BallError;
use crate::geom::{
    max_margin_direction, smallest_enclosing_ball, CapConstraint, Point3, Tolerance, Vec3,
};

/// A labeled family of unit-ball centers. Reducedness (no ball can be
/// removed without enlarging the intersection) is established by
/// [`reduce_family`] or checked by the polyhedron builder, not by this
/// constructor.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitBallFamily {
    pub centers: Vec<Point3>,
}

impl UnitBallFamily {
    pub fn new(centers: Vec<Point3>) -> Self {
        assert!(!centers.is_empty(), "a family needs at least one ball");
        assert!(
            centers.iter().all(|c| c.is_finite()),
            "center coordinates must be finite"
        );
        UnitBallFamily { centers }
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Membership in the ball-polyhedron `P` = intersection of the balls.
    pub fn contains(&self, p: Point3, eps: f64) -> bool {
        self.centers.iter().all(|c| p.dist(*c) <= 1.0 + eps)
    }

    /// Strict interior membership.
    pub fn contains_interior(&self, p: Point3, eps: f64) -> bool {
        self.centers.iter().all(|c| p.dist(*c) < 1.0 - eps)
    }
}

#[derive(Clone, Debug)]
pub struct ReduceOutcome {
    pub family: UnitBallFamily,
    /// Indices into the original list that were kept, in order.
    pub kept: Vec<usize>,
    /// Indices of removed (redundant) balls, in removal order.
    pub removed: Vec<usize>,
}

/// Margin of the ball's boundary contribution: positive exactly when its
/// sphere meets the interior of the intersection of the other balls in a
/// two-dimensional patch. The direction realizing the margin is returned as
/// a witness.
pub(super) fn face_margin(centers: &[Point3], k: usize, tol: &Tolerance) -> (Vec3, f64) {
    let mut caps = Vec::with_capacity(centers.len() - 1);
    for (j, c) in centers.iter().enumerate() {
        if j == k {
            continue;
        }
        let d = centers[k].dist(*c);
        if d <= tol.eps_len {
            // A coincident twin erases the face outright.
            return (Vec3::new(0.0, 0.0, 1.0), f64::NEG_INFINITY);
        }
        caps.push(CapConstraint {
            axis: (*c - centers[k]) / d,
            min_cos: d / 2.0,
        });
    }
    max_margin_direction(&caps)
}

/// Remove redundant balls one at a time until every remaining ball
/// contributes a two-dimensional boundary piece. Removing one ball can make
/// another essential, so removal is greedy on the smallest margin rather
/// than batched.
pub fn reduce_family(centers: &[Point3], tol: &Tolerance) -> Result<ReduceOutcome, BallError> {
    if centers.is_empty() {
        return Err(BallError::EmptyInterior);
    }
    let (_, seb) = smallest_enclosing_ball(centers);
    if seb > 1.0 - tol.eps_len {
        return Err(BallError::EmptyInterior);
    }

    let mut kept: Vec<usize> = (0..centers.len()).collect();
    let mut removed = Vec::new();
    loop {
        let current: Vec<Point3> = kept.iter().map(|&i| centers[i]).collect();
        if current.len() == 1 {
            break;
        }
        let mut worst: Option<(f64, usize)> = None;
        for (pos, _) in kept.iter().enumerate() {
            let (_, margin) = face_margin(&current, pos, tol);
            if margin <= tol.eps_len && worst.is_none_or(|(m, _)| margin < m) {
                worst = Some((margin, pos));
            }
        }
        match worst {
            Some((_, pos)) => removed.push(kept.remove(pos)),
            None => break,
        }
    }

    let family = UnitBallFamily::new(kept.iter().map(|&i| centers[i]).collect());
    Ok(ReduceOutcome {
        family,
        kept,
        removed,
    })
}

/// Indices of balls that fail the boundary-contribution test, for the
/// builder's reducedness guard.
pub(super) fn redundant_indices(centers: &[Point3], tol: &Tolerance) -> Vec<usize> {
    if centers.len() == 1 {
        return Vec::new();
    }
    (0..centers.len())
        .filter(|&k| face_margin(centers, k, tol).1 <= tol.eps_len)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::tetrahedron_centers as regular_tetrahedron_centers;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Containment oracle: sample a Fibonacci lattice on the sphere of ball
    /// `k` and count samples strictly interior to every other ball.
    fn boundary_samples_inside(centers: &[Point3], k: usize, samples: usize) -> usize {
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let mut hits = 0;
        for s in 0..samples {
            let z = 1.0 - 2.0 * (s as f64 + 0.5) / samples as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * s as f64;
            let p = centers[k] + Vec3::new(r * phi.cos(), r * phi.sin(), z);
            let inside = centers
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .all(|(_, c)| p.dist(*c) < 1.0 - 1e-9);
            if inside {
                hits += 1;
            }
        }
        hits
    }

    #[test]
    fn already_reduced_family_is_identity() {
        let centers = regular_tetrahedron_centers(1.0);
        let out = reduce_family(&centers, &tol()).unwrap();
        assert!(out.removed.is_empty());
        assert_eq!(out.kept, vec![0, 1, 2, 3]);
    }

    #[test]
    fn near_twin_behind_the_face_is_removed() {
        let mut centers = regular_tetrahedron_centers(1.0);
        // Shift the twin toward the face of ball 0 (the patch faces the
        // other centers): ball 0 then cuts the twin's sphere off the
        // boundary, so the twin contributes nothing.
        let toward_face = -centers[0].unit();
        centers.push(centers[0] + toward_face * 1e-3);
        let out = reduce_family(&centers, &tol()).unwrap();
        assert_eq!(out.removed, vec![4]);
        assert_eq!(out.kept, vec![0, 1, 2, 3]);
        // Sampled-boundary oracle agrees: the twin contributes no boundary.
        assert_eq!(boundary_samples_inside(&centers, 4, 20000), 0);
        assert!(boundary_samples_inside(&centers, 0, 20000) > 0);
        for k in 0..4 {
            assert!(boundary_samples_inside(&out.family.centers, k, 2000) > 0);
        }
    }

    #[test]
    fn distant_balls_have_empty_interior() {
        let centers = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(2.0, 0.0, 0.0),
            Point3::new(0.0, 2.0, 0.0),
        ];
        match reduce_family(&centers, &tol()) {
            Err(BallError::EmptyInterior) => {}
            other => panic!("expected EmptyInterior, got {other:?}"),
        }
    }

    #[test]
    fn exact_duplicate_is_removed_deterministically() {
        let mut centers = regular_tetrahedron_centers(1.0);
        centers.push(centers[1]);
        let out = reduce_family(&centers, &tol()).unwrap();
        assert_eq!(out.kept.len(), 4);
        assert!(out.removed == vec![1] || out.removed == vec![4]);
    }
}
