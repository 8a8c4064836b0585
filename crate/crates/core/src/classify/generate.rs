use super::{is_normal, ClassifyError};
use crate::ball::{build, is_standard, reduce_family, UnitBallFamily};
use crate::geom::{smallest_enclosing_ball, Point3, Tolerance};
use crate::rng::SplitMix64;
use crate::voronoi::farthest_voronoi;

/// Centers of a regular tetrahedron with the given edge length, centered at
/// the origin.
pub fn tetrahedron_centers(edge: f64) -> Vec<Point3> {
    let s = edge / (2.0 * 2f64.sqrt());
    vec![
        Point3::new(1.0, 1.0, 1.0) * s,
        Point3::new(1.0, -1.0, -1.0) * s,
        Point3::new(-1.0, 1.0, -1.0) * s,
        Point3::new(-1.0, -1.0, 1.0) * s,
    ]
}

/// The golden instance: four unit balls centered on a regular tetrahedron
/// of edge length one.
pub fn tetrahedron_family(edge: f64) -> UnitBallFamily {
    UnitBallFamily::new(tetrahedron_centers(edge))
}

const GENERATOR_BUDGET: usize = 400;

/// Construct a standard but not normal ball-polyhedron.
///
/// Sample points in convex generic position, compute the farthest-point
/// Voronoi vertices, and pick a radius just below the largest
/// vertex-to-site distance `l` (but above the second largest and above the
/// enclosing radius, so the body stays nonempty and only the worst vertex
/// leaves it); rescaling by that radius makes the balls unit. The escaped
/// vertex certifies non-normality while the boundary structure around it
/// stays a lattice.
///
/// Four balls cannot work here: their only Voronoi vertex sits at the
/// circumcenter, and once it leaves the body every sphere triple carries
/// zero or two boundary vertices, which breaks the lattice conditions. The
/// sampler therefore uses six to eight balls and requires a solid gap
/// between the two largest vertex distances.
pub fn gen_standard_not_normal(
    seed: u64,
    tol: &Tolerance,
) -> Result<UnitBallFamily, ClassifyError> {
    let mut rng = SplitMix64::new(seed ^ 0x5bd1_e995);
    for _ in 0..GENERATOR_BUDGET {
        let f = 6 + (rng.next_u64() % 3) as usize;
        let pts: Vec<Point3> = (0..f)
            .map(|_| rng.unit_vector() * rng.range(0.8, 1.1))
            .collect();
        let Ok(tiling) = farthest_voronoi(&pts, tol) else {
            continue;
        };
        if tiling.vertices.len() < 2 {
            continue;
        }
        let mut rhos: Vec<f64> = tiling.vertices.iter().map(|v| v.rho).collect();
        rhos.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let (l, second) = (rhos[0], rhos[1]);
        let (_, r_seb) = smallest_enclosing_ball(&pts);
        let anchor = second.max(r_seb);
        if l - anchor < 0.02 * l {
            continue;
        }
        for frac in [0.9, 0.7, 0.5] {
            let r1 = anchor + frac * (l - anchor);
            let centers: Vec<Point3> = pts.iter().map(|p| *p / r1).collect();
            if !candidate_is_standard_not_normal(&centers, tol) {
                continue;
            }
            return Ok(UnitBallFamily::new(centers));
        }
    }
    Err(ClassifyError::GeneratorExhausted {
        budget: GENERATOR_BUDGET,
    })
}

fn candidate_is_standard_not_normal(centers: &[Point3], tol: &Tolerance) -> bool {
    let Ok(reduced) = reduce_family(centers, tol) else {
        return false;
    };
    if !reduced.removed.is_empty() {
        return false;
    }
    let Ok((p, _)) = build(&reduced.family, tol) else {
        return false;
    };
    if !is_standard(&p).standard {
        return false;
    }
    match is_normal(&p, tol) {
        // Ask for a solid margin past the threshold so downstream tests
        // never sit on the degenerate band.
        Ok(d) => !d.normal && !d.degenerate && d.vertices.iter().any(|v| v.rho > 1.0 + 1e-6),
        Err(_) => false,
    }
}

/// Rejection-sample a normal ball-polyhedron with `f` generating balls:
/// centers are drawn near a sphere around the origin (independent radii, so
/// no cosphericity), far enough apart for every ball to contribute a face,
/// and the draw is kept when the body is reduced, standard and strictly
/// normal. Deterministic in `(f, seed)`.
pub fn gen_normal_random(
    f: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<UnitBallFamily, ClassifyError> {
    assert!(f >= 4, "a normal ball-polyhedron needs at least four balls");
    let mut rng = SplitMix64::new(seed.wrapping_mul(0x9e37_79b9).wrapping_add(f as u64));
    let min_angle = (1.9 / (f as f64).sqrt()).min(0.9);
    let min_cos_gap = min_angle.cos();

    'attempts: for _ in 0..GENERATOR_BUDGET {
        let mut dirs: Vec<Point3> = Vec::with_capacity(f);
        let mut guard = 0;
        while dirs.len() < f {
            guard += 1;
            if guard > 300 {
                continue 'attempts;
            }
            let u = rng.unit_vector();
            if dirs.iter().all(|d| d.dot(u) < min_cos_gap) {
                dirs.push(u);
            }
        }
        let centers: Vec<Point3> = dirs
            .into_iter()
            .map(|u| u * rng.range(0.42, 0.58))
            .collect();

        let Ok(reduced) = reduce_family(&centers, tol) else {
            continue;
        };
        if !reduced.removed.is_empty() {
            continue;
        }
        let Ok((p, _)) = build(&reduced.family, tol) else {
            continue;
        };
        if !is_standard(&p).standard {
            continue;
        }
        match is_normal(&p, tol) {
            Ok(d) if d.normal && d.vertices.iter().all(|v| v.rho < 1.0 - 1e-6) => {
                return Ok(reduced.family)
            }
            _ => continue,
        }
    }
    Err(ClassifyError::GeneratorExhausted {
        budget: GENERATOR_BUDGET,
    })
}
