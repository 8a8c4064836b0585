//! Ball-polyhedra in Euclidean 3-space.
//!
//! A ball-polyhedron is an intersection with non-empty interior of finitely
//! many closed unit balls. This crate constructs such bodies from their
//! generating centers, exposes their vertex-edge-face structure together
//! with dihedral angles, face angles and edge lengths, classifies them
//! (standard / simplicial / normal) through farthest-point Voronoi and
//! truncated Delaunay machinery, and verifies rigidity statements on
//! concrete instances: a Stoker-style theorem (equal edge lengths and
//! dihedral angles force congruence), an Alexandrov-style theorem (equal
//! face angles force equal dihedral angles), and global rigidity of normal
//! ball-polyhedra with respect to their dihedral angles.
//!
//! Module map:
//! - [`geom`]: numeric kernel (vectors, spheres, tolerances, registration).
//! - [`voronoi`]: farthest-point Voronoi tilings, Delaunay complexes and
//!   their truncated variants, with the vertex/edge/face correspondences.
//! - [`ball`]: ball-polyhedron construction and boundary structure.
//! - [`classify`]: normality tests, center-polyhedra, instance generators.
//! - [`rigidity`]: combinatorial equivalence, congruence, the spherical
//!   Legendre-Cauchy lemma, sign counting, and the verification pipelines.

pub mod ball;
pub mod classify;
pub mod geom;
pub mod rigidity;
pub mod rng;
pub mod voronoi;

pub use ball::{AngleData, BallPolyhedron, UnitBallFamily};
pub use geom::{Isometry, Point3, Sphere, Tolerance, Vec3};
pub use voronoi::{DelaunayComplex, TruncatedComplex, TruncatedTiling, VoronoiTiling};
