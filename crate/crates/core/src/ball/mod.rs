//! Ball-polyhedron construction: vertices, edges and faces of an
//! intersection of unit balls, angle data, spherical-cap face
//! representations, vertex figures and normal images, spherical convex
//! hulls of faces, and the medial graph of the boundary.

mod family;
mod medial;
mod polyhedron;
mod spherical;

pub use family::{reduce_family, ReduceOutcome, UnitBallFamily};
pub use medial::{medial_graph, MedialGraph, PlaneGraph};
pub use polyhedron::{
    angle_data, build, is_simplicial, is_standard, AngleData, BallEdge, BallFace, BallPolyhedron,
    BallVertex, EdgeKind, OrientedEdge, StandardCertificate, StandardnessReport,
};
pub use spherical::{
    face_cap_representation, normal_image, normal_image_ordered, spherical_convex_hull,
    spherical_convex_hull_ordered, vertex_figure, vertex_star, SphericalCap, SphericalPolygon,
    VertexStar,
};

use crate::geom::Point3;
use std::fmt;

#[derive(Clone, Debug)]
pub enum BallError {
    /// The balls have no common interior point.
    EmptyInterior,
    /// Some balls contribute no boundary face.
    NotReduced { redundant: Vec<usize> },
    /// More than three spheres pass through one boundary point, or a vertex
    /// query addressed a nonexistent vertex.
    DegenerateVertex { point: Point3, spheres: Vec<usize> },
    /// The vertex-edge-face structure is not a lattice.
    NotStandard { certificate: String },
    /// Too few vertices for the requested polygon.
    TooFewVertices { got: usize, need: usize },
    /// A spherical polygon with coincident or antipodal vertices.
    DegenerateSphericalPolygon,
    /// A point handed to a spherical polygon is off its support sphere.
    PointOffSphere { point: Point3 },
    /// A face boundary could not be chained into closed cycles.
    BoundaryWalkFailed { sphere: usize },
    /// An inconsistent rotation system or embedding.
    BadEmbedding { detail: String },
}

impl fmt::Display for BallError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BallError::EmptyInterior => write!(f, "the balls have no common interior point"),
            BallError::NotReduced { redundant } => {
                write!(f, "family is not reduced; redundant balls: {redundant:?}")
            }
            BallError::DegenerateVertex { point, spheres } => {
                write!(f, "degenerate vertex at {point:?} on spheres {spheres:?}")
            }
            BallError::NotStandard { certificate } => {
                write!(f, "not a standard ball-polyhedron: {certificate}")
            }
            BallError::TooFewVertices { got, need } => {
                write!(f, "need at least {need} vertices, got {got}")
            }
            BallError::DegenerateSphericalPolygon => {
                write!(f, "degenerate spherical polygon")
            }
            BallError::PointOffSphere { point } => {
                write!(f, "point {point:?} is not on the support sphere")
            }
            BallError::BoundaryWalkFailed { sphere } => {
                write!(f, "could not close the boundary walk of face {sphere}")
            }
            BallError::BadEmbedding { detail } => write!(f, "bad embedding: {detail}"),
        }
    }
}

impl std::error::Error for BallError {}
