//! Farthest-point Voronoi tilings and Delaunay complexes for finite center
//! sets, together with their truncated variants and the vertex / edge / face
//! correspondences between the two structures.
//!
//! The Delaunay complex is built first, by direct witness-sphere search over
//! point subsets; the Voronoi vertices, edges and faces are then derived
//! from it through the correspondences, which doubles as a self test. All
//! instances handled by the crate are desk scale, so the subset search is
//! exact where an incremental construction would need careful degeneracy
//! handling.

mod correspondence;
mod delaunay;
mod tiling;
mod truncate;

pub use correspondence::{check_correspondences, CorrespondenceReport, CorrespondenceViolation};
pub use delaunay::delaunay_complex;
pub use tiling::farthest_voronoi;
pub use truncate::{truncate, truncated_delaunay};

use crate::geom::{Point3, Vec3};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum VoronoiError {
    DuplicateCenters {
        a: usize,
        b: usize,
    },
    TooFewCenters {
        got: usize,
        need: usize,
    },
    /// All centers lie in one plane; no Voronoi vertex exists.
    CoplanarInput,
    /// A near-cospherical subset makes a cell's index set ambiguous within
    /// the cosphericity tolerance.
    AmbiguousCosphericity {
        detail: String,
    },
    /// Same condition surfaced through the tiling interface.
    DegenerateTies {
        detail: String,
    },
    /// The intersection of the unit balls has empty interior.
    EmptyIntersection,
}

impl fmt::Display for VoronoiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VoronoiError::DuplicateCenters { a, b } => {
                write!(f, "centers {a} and {b} coincide within tolerance")
            }
            VoronoiError::TooFewCenters { got, need } => {
                write!(f, "need at least {need} centers, got {got}")
            }
            VoronoiError::CoplanarInput => write!(f, "centers are coplanar"),
            VoronoiError::AmbiguousCosphericity { detail } => {
                write!(f, "ambiguous cosphericity: {detail}")
            }
            VoronoiError::DegenerateTies { detail } => write!(f, "degenerate ties: {detail}"),
            VoronoiError::EmptyIntersection => {
                write!(f, "the unit balls have no common interior point")
            }
        }
    }
}

impl std::error::Error for VoronoiError {}

/// Closed half-space `<normal, x> >= offset`.
#[derive(Clone, Copy, Debug)]
pub struct Halfspace {
    pub normal: Vec3,
    pub offset: f64,
    /// Index of the competing site this constraint comes from.
    pub other: usize,
}

impl Halfspace {
    pub fn contains(&self, x: Point3, eps: f64) -> bool {
        self.normal.dot(x) >= self.offset - eps
    }

    pub fn margin(&self, x: Point3) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

/// One farthest-point Voronoi cell, as the intersection of half-spaces
/// `{x : 2 <x, c_j - c_i> >= |c_j|^2 - |c_i|^2}` over the competing sites.
#[derive(Clone, Debug)]
pub struct VoronoiCell {
    pub site: usize,
    pub halfspaces: Vec<Halfspace>,
    /// Cells of sites interior to the convex hull are empty.
    pub is_empty: bool,
}

impl VoronoiCell {
    pub fn contains(&self, x: Point3, eps: f64) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x, eps))
    }
}

/// A Voronoi vertex: the common point of the cells in `region`, equidistant
/// from the corresponding sites at distance `rho` and at least as far from
/// them as from every other site.
#[derive(Clone, Debug)]
pub struct VoronoiVertex {
    pub point: Point3,
    /// Sorted site indices whose cells meet here.
    pub region: Vec<usize>,
    pub rho: f64,
}

/// Geometric extent of a Voronoi edge along its carrier line.
#[derive(Clone, Copy, Debug)]
pub enum EdgeExtent {
    /// Between two Voronoi vertices (ids into the vertex list), at carrier
    /// parameters `t` in `[t0, t1]`.
    Segment { ends: [usize; 2], t0: f64, t1: f64 },
    /// From one vertex to infinity, `t >= t0`.
    Ray { start: usize, t0: f64 },
    /// A full line (no Voronoi vertex exists on it).
    Line,
}

/// A Voronoi edge: the locus equidistant from the sites in `region` (which
/// span a plane), parametrized as `foot + t * axis` with
/// `rho(t) = sqrt(circumradius^2 + t^2)`.
#[derive(Clone, Debug)]
pub struct VoronoiEdge {
    pub region: Vec<usize>,
    /// Center of the circle through the region sites.
    pub foot: Point3,
    /// Radius of that circle; the minimal site distance on the edge line.
    pub circumradius: f64,
    /// Unit direction of the carrier line.
    pub axis: Vec3,
    pub extent: EdgeExtent,
}

impl VoronoiEdge {
    pub fn point_at(&self, t: f64) -> Point3 {
        self.foot + self.axis * t
    }

    pub fn rho_at(&self, t: f64) -> f64 {
        (self.circumradius * self.circumradius + t * t).sqrt()
    }

    /// Closed parameter interval of the extent (infinite bounds for rays
    /// and lines).
    pub fn t_interval(&self) -> (f64, f64) {
        match self.extent {
            EdgeExtent::Segment { t0, t1, .. } => (t0.min(t1), t0.max(t1)),
            EdgeExtent::Ray { t0, .. } => (t0, f64::INFINITY),
            EdgeExtent::Line => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

/// A Voronoi face: the two-dimensional part of `V_i` meeting `V_j`, carried
/// by the perpendicular bisector plane of the two sites.
#[derive(Clone, Debug)]
pub struct VoronoiFace {
    pub region: [usize; 2],
    /// Midpoint of the two sites; lies on the face's plane.
    pub plane_point: Point3,
    /// Unit normal of the bisector plane.
    pub plane_normal: Vec3,
    /// Edge ids bounding this face.
    pub edges: Vec<usize>,
    /// Vertex ids on this face.
    pub vertices: Vec<usize>,
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub struct VoronoiTiling {
    pub centers: Vec<Point3>,
    pub cells: Vec<VoronoiCell>,
    pub vertices: Vec<VoronoiVertex>,
    pub edges: Vec<VoronoiEdge>,
    pub faces: Vec<VoronoiFace>,
    /// Radius used to clip unbounded elements for reporting only;
    /// containment tests never use clipped geometry.
    pub clip_radius: f64,
}

impl VoronoiTiling {
    /// Finite polyline endpoints of an edge for reporting, with rays and
    /// lines clipped to the reporting radius.
    pub fn edge_report_points(&self, edge: &VoronoiEdge) -> (Point3, Point3) {
        let r = self.clip_radius;
        match edge.extent {
            EdgeExtent::Segment { t0, t1, .. } => (edge.point_at(t0), edge.point_at(t1)),
            EdgeExtent::Ray { t0, .. } => (edge.point_at(t0), edge.point_at(t0 + r)),
            EdgeExtent::Line => (edge.point_at(-r), edge.point_at(r)),
        }
    }
}

/// A member of the Delaunay complex of full dimension: sites cospherical on
/// a witness sphere that strictly contains every other site.
#[derive(Clone, Debug)]
pub struct DelaunayCell {
    /// Sorted site indices; four in general position, more when cospherical.
    pub region: Vec<usize>,
    pub circumcenter: Point3,
    pub circumradius: f64,
}

/// A two-dimensional member: a facet of one or two cells.
#[derive(Clone, Debug)]
pub struct DelaunayFacet {
    /// Sorted site indices (three, or more when cocircular).
    pub region: Vec<usize>,
    /// Same indices in convex cyclic order around the ring center.
    pub polygon: Vec<usize>,
    pub cells: (usize, Option<usize>),
    /// Unit normal of the facet plane.
    pub plane_normal: Vec3,
    /// Circumcenter of the facet sites within their plane.
    pub ring_center: Point3,
    pub ring_radius: f64,
    /// For boundary facets: unit normal pointing away from the hull.
    pub outward: Option<Vec3>,
}

impl DelaunayFacet {
    pub fn is_boundary(&self) -> bool {
        self.cells.1.is_none()
    }
}

/// A one-dimensional member: a segment between two sites.
#[derive(Clone, Debug)]
pub struct DelaunayEdgeMember {
    pub pair: [usize; 2],
    /// Facet ids having this pair as a polygon edge.
    pub facets: Vec<usize>,
    /// Lies on the boundary of the convex hull of the sites.
    pub on_hull: bool,
}

#[derive(Clone, Debug)]
pub struct DelaunayComplex {
    pub centers: Vec<Point3>,
    pub cells: Vec<DelaunayCell>,
    pub facets: Vec<DelaunayFacet>,
    pub edges: Vec<DelaunayEdgeMember>,
    /// Sorted indices of sites in convex position (= sites of nonempty
    /// Voronoi cells).
    pub hull_vertices: Vec<usize>,
}

/// Sorted index-set families (cells, facets, pairs) for exact comparisons.
pub type IndexFamilies = (Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<[usize; 2]>);

impl DelaunayComplex {
    /// Index-set families for exact comparisons against oracles.
    pub fn index_families(&self) -> IndexFamilies {
        let mut cells: Vec<Vec<usize>> = self.cells.iter().map(|c| c.region.clone()).collect();
        let mut facets: Vec<Vec<usize>> = self.facets.iter().map(|f| f.region.clone()).collect();
        let mut pairs: Vec<[usize; 2]> = self.edges.iter().map(|e| e.pair).collect();
        cells.sort();
        facets.sort();
        pairs.sort();
        (cells, facets, pairs)
    }
}

/// Survival masks over the members of a [`DelaunayComplex`] under
/// truncation by the unit balls.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    pub cell_survives: Vec<bool>,
    pub facet_survives: Vec<bool>,
    pub edge_survives: Vec<bool>,
    /// Members whose witness sits within tolerance of the ball boundary.
    pub cell_degenerate: Vec<bool>,
    pub facet_degenerate: Vec<bool>,
    pub edge_degenerate: Vec<bool>,
}

impl TruncatedComplex {
    pub fn equals_complex(&self) -> bool {
        self.cell_survives.iter().all(|s| *s)
            && self.facet_survives.iter().all(|s| *s)
            && self.edge_survives.iter().all(|s| *s)
    }

    /// Surviving members as sorted index-set families.
    pub fn index_families(&self, complex: &DelaunayComplex) -> IndexFamilies {
        let mut cells: Vec<Vec<usize>> = complex
            .cells
            .iter()
            .zip(&self.cell_survives)
            .filter(|(_, s)| **s)
            .map(|(c, _)| c.region.clone())
            .collect();
        let mut facets: Vec<Vec<usize>> = complex
            .facets
            .iter()
            .zip(&self.facet_survives)
            .filter(|(_, s)| **s)
            .map(|(f, _)| f.region.clone())
            .collect();
        let mut pairs: Vec<[usize; 2]> = complex
            .edges
            .iter()
            .zip(&self.edge_survives)
            .filter(|(_, s)| **s)
            .map(|(e, _)| e.pair)
            .collect();
        cells.sort();
        facets.sort();
        pairs.sort();
        (cells, facets, pairs)
    }
}

/// Truncated Voronoi tiling: every cell intersected with its own unit ball
/// (equivalently with the ball-polyhedron itself).
#[derive(Clone, Debug)]
pub struct TruncatedTiling {
    pub centers: Vec<Point3>,
    /// Per Voronoi vertex: whether it lies in the ball-polyhedron.
    pub vertex_in_p: Vec<bool>,
    /// Per site: whether the truncated cell is nonempty, with a witness.
    pub cell_nonempty: Vec<bool>,
    pub cell_witness: Vec<Option<Point3>>,
}
