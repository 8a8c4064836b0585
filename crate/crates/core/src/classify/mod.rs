//! Classification of ball-polyhedra: circumscribed spheres of the flower
//! (the union of the generating balls), the three equivalent normality
//! definitions, the center-polyhedron with its Delaunay-induced face
//! lattice and the duality between the two lattices, and reproducible
//! instance generators.

mod center;
mod generate;
mod poset;

pub use center::{
    center_polyhedron, check_center_duality, vef_poset, CenterFacet, CenterPolyhedron,
    DualityReport,
};
pub use generate::{
    gen_normal_random, gen_standard_not_normal, tetrahedron_centers, tetrahedron_family,
};
pub use poset::{find_anti_isomorphism, AntiIsomorphism, GradedPoset};

use crate::ball::{BallError, BallPolyhedron, UnitBallFamily};
use crate::geom::{Point3, Tolerance};
use crate::voronoi::{farthest_voronoi, VoronoiError};
use std::fmt;

#[derive(Clone, Debug)]
pub enum ClassifyError {
    /// The generating centers lie in a plane; no circumscribed sphere and
    /// no Voronoi vertex exist.
    CoplanarCenters,
    /// The three normality definitions disagreed outside the degenerate
    /// band; indicates an internal inconsistency, never a valid input.
    DisagreementBug {
        detail: String,
    },
    /// A duality check was requested for a non-normal polyhedron.
    NotNormal {
        detail: String,
    },
    /// The retry budget of a generator ran out.
    GeneratorExhausted {
        budget: usize,
    },
    Voronoi(VoronoiError),
    Ball(BallError),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::CoplanarCenters => write!(f, "the centers are coplanar"),
            ClassifyError::DisagreementBug { detail } => {
                write!(f, "normality sub-verdicts disagree: {detail}")
            }
            ClassifyError::NotNormal { detail } => {
                write!(f, "not a normal ball-polyhedron: {detail}")
            }
            ClassifyError::GeneratorExhausted { budget } => {
                write!(f, "generator gave up after {budget} attempts")
            }
            ClassifyError::Voronoi(e) => write!(f, "{e}"),
            ClassifyError::Ball(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ClassifyError {}

impl From<VoronoiError> for ClassifyError {
    fn from(e: VoronoiError) -> Self {
        ClassifyError::Voronoi(e)
    }
}

impl From<BallError> for ClassifyError {
    fn from(e: BallError) -> Self {
        ClassifyError::Ball(e)
    }
}

/// The union of the family's unit balls.
#[derive(Clone, Debug)]
pub struct FlowerPolyhedron {
    pub family: UnitBallFamily,
}

/// A sphere containing the flower-polyhedron and touching a maximal set of
/// its balls: centered at a farthest-point Voronoi vertex of the centers,
/// with radius one more than the vertex's site distance.
#[derive(Clone, Debug)]
pub struct CircumscribedSphere {
    pub center: Point3,
    /// The radius, `rho + 1`.
    pub radius: f64,
    /// Indices of the balls tangent to the sphere.
    pub tangent_set: Vec<usize>,
    /// Distance from the center to the tangent balls' centers.
    pub rho: f64,
}

/// One circumscribed sphere per farthest-point Voronoi vertex.
pub fn circumscribed_spheres(
    flower: &FlowerPolyhedron,
    tol: &Tolerance,
) -> Result<Vec<CircumscribedSphere>, ClassifyError> {
    let tiling = farthest_voronoi(&flower.family.centers, tol)?;
    if tiling.vertices.is_empty() {
        return Err(ClassifyError::CoplanarCenters);
    }
    Ok(tiling
        .vertices
        .iter()
        .map(|v| CircumscribedSphere {
            center: v.point,
            radius: v.rho + 1.0,
            tangent_set: v.region.clone(),
            rho: v.rho,
        })
        .collect())
}

/// Normality diagnostics for one Voronoi vertex.
#[derive(Clone, Debug)]
pub struct VertexNormality {
    pub point: Point3,
    pub region: Vec<usize>,
    /// Site distance measured over the vertex's own region.
    pub rho: f64,
    /// Circumscribed-sphere radius `rho + 1`.
    pub delta: f64,
    /// `1 - max_k |v - x_k|` over every center: positive inside the body.
    pub interior_margin: f64,
}

/// Joint verdict of the three equivalent normality definitions.
#[derive(Clone, Debug)]
pub struct NormalityDiagnostics {
    pub normal: bool,
    /// Some vertex sits within tolerance of the threshold; the verdict is
    /// conservatively "not normal".
    pub degenerate: bool,
    /// Every circumscribed sphere has radius below two.
    pub by_circumscribed_radius: bool,
    /// Every Voronoi vertex lies strictly inside the body.
    pub by_vertex_interiority: bool,
    /// Every center-to-own-cell-vertex distance is strictly below one.
    pub by_cell_distance: bool,
    pub vertices: Vec<VertexNormality>,
}

/// Evaluate all three definitions of normality independently and check
/// that they agree. A vertex inside the tolerance band of the threshold
/// marks the instance degenerate and the verdict not normal.
pub fn is_normal(
    p: &BallPolyhedron,
    tol: &Tolerance,
) -> Result<NormalityDiagnostics, ClassifyError> {
    let centers = p.centers();
    let tiling = farthest_voronoi(centers, tol)?;
    if tiling.vertices.is_empty() {
        return Err(ClassifyError::CoplanarCenters);
    }
    let eps = tol.eps_len;

    let mut vertices = Vec::with_capacity(tiling.vertices.len());
    for v in &tiling.vertices {
        let rho = v
            .region
            .iter()
            .map(|&i| v.point.dist(centers[i]))
            .fold(f64::NEG_INFINITY, f64::max);
        let max_any = centers
            .iter()
            .map(|c| v.point.dist(*c))
            .fold(f64::NEG_INFINITY, f64::max);
        vertices.push(VertexNormality {
            point: v.point,
            region: v.region.clone(),
            rho,
            delta: rho + 1.0,
            interior_margin: 1.0 - max_any,
        });
    }

    let degenerate = vertices.iter().any(|v| {
        (v.delta - 2.0).abs() <= eps || v.interior_margin.abs() <= eps || (v.rho - 1.0).abs() <= eps
    });
    let by_circumscribed_radius = vertices.iter().all(|v| v.delta < 2.0 - eps);
    let by_vertex_interiority = vertices.iter().all(|v| v.interior_margin > eps);
    let by_cell_distance = vertices.iter().all(|v| v.rho < 1.0 - eps);

    if !degenerate
        && !(by_circumscribed_radius == by_vertex_interiority
            && by_vertex_interiority == by_cell_distance)
    {
        return Err(ClassifyError::DisagreementBug {
            detail: format!(
                "radius {by_circumscribed_radius}, interiority {by_vertex_interiority}, distance {by_cell_distance}"
            ),
        });
    }

    let normal =
        !degenerate && by_circumscribed_radius && by_vertex_interiority && by_cell_distance;
    Ok(NormalityDiagnostics {
        normal,
        degenerate,
        by_circumscribed_radius,
        by_vertex_interiority,
        by_cell_distance,
        vertices,
    })
}
