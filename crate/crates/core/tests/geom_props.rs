//! Property tests for the kernel invariants and the spherical lemma
//! machinery.

use ballpoly_core::ball::SphericalPolygon;
use ballpoly_core::geom::{
    circumsphere, dihedral_from_center_distance, edge_circle_radius, fit_isometry,
    sphere_triple_intersection, Point3, Sphere, Tolerance, TripleIntersection, Vec3,
};
use ballpoly_core::rigidity::{legendre_cauchy, LegendreCauchyOutcome};
use ballpoly_core::rng::SplitMix64;
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn coord() -> impl Strategy<Value = f64> {
    -1.0f64..1.0
}

fn point() -> impl Strategy<Value = Point3> {
    (coord(), coord(), coord()).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

proptest! {
    /// The edge-radius identity sin(alpha/2) = sqrt(1 - d^2/4).
    #[test]
    fn dihedral_edge_radius_identity(d in 0.05f64..1.95) {
        let alpha = dihedral_from_center_distance(d).unwrap();
        prop_assert!(((alpha / 2.0).sin() - (1.0 - d * d / 4.0).sqrt()).abs() < 1e-12);
        prop_assert!((edge_circle_radius(d) - (alpha / 2.0).sin()).abs() < 1e-12);
    }

    /// Monotonicity of the dihedral angle in the center distance.
    #[test]
    fn dihedral_is_strictly_decreasing(d in 0.05f64..1.90) {
        let a = dihedral_from_center_distance(d).unwrap();
        let b = dihedral_from_center_distance(d + 0.04).unwrap();
        prop_assert!(b < a);
    }

    /// Triple intersections sit at the right distance from every center and
    /// the two-point case is mirror-symmetric across the centers' plane.
    #[test]
    fn triple_intersection_distances_and_mirror(
        c1 in point(), c2 in point(), c3 in point(), r in 0.8f64..1.6
    ) {
        let t = tol();
        if let Ok(hit) = sphere_triple_intersection(c1, c2, c3, r, &t) {
            for p in hit.points() {
                for c in [c1, c2, c3] {
                    prop_assert!((p.dist(c) - r).abs() <= 1e-9);
                }
            }
            if let TripleIntersection::Pair(p, q) = hit {
                // The midpoint lies in the centers' plane and the chord is
                // parallel to its normal.
                let n = (c2 - c1).cross(c3 - c1).unit();
                let mid = (p + q) / 2.0;
                prop_assert!(n.dot(mid - c1).abs() < 1e-8);
                let chord = (p - q).unit();
                prop_assert!(chord.cross(n).norm() < 1e-8);
            }
        }
    }

    /// The circumsphere center lies on all six perpendicular bisector
    /// planes of the defining points.
    #[test]
    fn circumsphere_center_on_all_bisector_planes(
        p1 in point(), p2 in point(), p3 in point(), p4 in point()
    ) {
        let t = tol();
        if let Ok(Sphere { center, radius }) = circumsphere(p1, p2, p3, p4, &t) {
            let pts = [p1, p2, p3, p4];
            for i in 0..4 {
                prop_assert!((center.dist(pts[i]) - radius).abs() < 1e-7 * radius.max(1.0));
                for j in i + 1..4 {
                    // On the bisector plane of (i, j).
                    let mid = (pts[i] + pts[j]) / 2.0;
                    let d = pts[j] - pts[i];
                    prop_assert!(d.unit().dot(center - mid).abs() < 1e-7 * radius.max(1.0));
                }
            }
        }
    }

    /// fit_isometry(g(S), S) composed with g is the identity on S.
    #[test]
    fn isometry_fit_round_trip(seed in 0u64..5000, reflect in any::<bool>()) {
        let t = tol();
        let mut rng = SplitMix64::new(seed);
        let pts: Vec<Point3> = (0..5).map(|_| rng.point_in_cube(1.0)).collect();
        let g = rng.random_isometry(reflect, &t);
        let moved = g.apply_all(&pts);
        let fit = fit_isometry(&moved, &pts, &t).unwrap();
        for p in &pts {
            let round = fit.isometry.apply(g.apply(*p));
            prop_assert!(round.dist(*p) < 1e-8);
        }
    }

    /// Valid equal-side spherical polygon pairs never yield a nonzero sign
    /// change count below four.
    #[test]
    fn legendre_cauchy_never_returns_two(
        side in 0.5f64..1.1,
        fa in 0.05f64..0.95,
        fb in 0.05f64..0.95,
    ) {
        let t = tol();
        let quad = |p: f64| -> SphericalPolygon {
            let q = (side.cos() / p.cos()).acos();
            let dirs = vec![
                Vec3::new(p.sin(), 0.0, p.cos()),
                Vec3::new(0.0, q.sin(), q.cos()),
                Vec3::new(-p.sin(), 0.0, p.cos()),
                Vec3::new(0.0, -q.sin(), q.cos()),
            ];
            SphericalPolygon::from_directions(Sphere::unit(Point3::ZERO), &dirs, &t).unwrap()
        };
        // Hinge parameters inside the feasible open interval (0, side).
        let pa = fa * side;
        let pb = fb * side;
        prop_assume!(pa > 0.02 && pb > 0.02 && pa < side - 0.02 && pb < side - 0.02);
        let u = quad(pa);
        let v = quad(pb);
        match legendre_cauchy(&u, &v, &t, 1e-7).unwrap() {
            LegendreCauchyOutcome::AllZero => prop_assert!((pa - pb).abs() < 1e-4),
            LegendreCauchyOutcome::SignChanges { count, .. } => prop_assert!(count >= 4),
            LegendreCauchyOutcome::Violation { count, sequence } => {
                prop_assert!(false, "violation: count {count}, sequence {sequence:?}");
            }
        }
    }
}
