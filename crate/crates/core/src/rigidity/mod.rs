//! Rigidity machinery: combinatorial equivalence of standard
//! ball-polyhedra, congruence testing through the generating centers, the
//! spherical Legendre-Cauchy lemma, the sign-counting lemma on plane
//! graphs, and the end-to-end verification pipelines for the rigidity
//! statements.

mod cauchy;
mod pipelines;


pub use cauchy::{
    brute_force_sign_counting, legendre_cauchy, sign_counting_check, LegendreCauchyOutcome,
    SignCountingCertificate, SignCountingOutcome, SignLabel, SignSequence,
};
pub use pipelines::{
    verify_alexandrov, verify_normal_global_rigidity, verify_stoker, AlexandrovReport,
    FaceSignCheck, NormalRigidityReport, StokerReport, VertexSignCheck, DEFAULT_EQ_TOL,
};

use crate::ball::{is_standard, BallError, BallPolyhedron};
use crate::classify::ClassifyError;
use crate::geom::{fit_isometry, GeomError, Isometry, Point3, Tolerance};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug)]
pub enum RigidityError {
    NotStandard {
        detail: String,
    },
    NotNormal {
        detail: String,
    },
    /// A hypothesis of the verified statement fails on the given data.
    PreconditionFailed {
        detail: String,
    },
    NotCongruent {
        max_residual: f64,
    },
    SideLengthMismatch {
        index: usize,
        left: f64,
        right: f64,
    },
    NotConvex,
    NotHemispherical,
    NotSimple,
    NotPlane,
    Ball(BallError),
    Classify(Box<ClassifyError>),
}

impl fmt::Display for RigidityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidityError::NotStandard { detail } => write!(f, "not standard: {detail}"),
            RigidityError::NotNormal { detail } => write!(f, "not normal: {detail}"),
            RigidityError::PreconditionFailed { detail } => {
                write!(f, "precondition failed: {detail}")
            }
            RigidityError::NotCongruent { max_residual } => {
                write!(f, "not congruent (best residual {max_residual:.3e})")
            }
            RigidityError::SideLengthMismatch { index, left, right } => {
                write!(f, "side {index} lengths differ: {left} vs {right}")
            }
            RigidityError::NotConvex => write!(f, "polygon is not spherically convex"),
            RigidityError::NotHemispherical => {
                write!(f, "polygon does not fit in an open hemisphere")
            }
            RigidityError::NotSimple => write!(f, "graph has loops or parallel arcs"),
            RigidityError::NotPlane => write!(f, "embedding fails the Euler check"),
            RigidityError::Ball(e) => write!(f, "{e}"),
            RigidityError::Classify(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RigidityError {}

impl From<BallError> for RigidityError {
    fn from(e: BallError) -> Self {
        RigidityError::Ball(e)
    }
}

impl From<ClassifyError> for RigidityError {
    fn from(e: ClassifyError) -> Self {
        RigidityError::Classify(Box::new(e))
    }
}

/// An inclusion-preserving bijection between the face lattices of two
/// standard ball-polyhedra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    /// Face (= sphere) index map.
    pub face_map: Vec<usize>,
    /// Edge id map.
    pub edge_map: Vec<usize>,
    /// Vertex id map.
    pub vertex_map: Vec<usize>,
}

/// How two faces of one polyhedron meet. Standardness limits the options.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MeetKind {
    Nothing,
    OneVertex,
    OneEdge,
}

fn meet_kinds(p: &BallPolyhedron) -> BTreeMap<[usize; 2], MeetKind> {
    let f = p.faces.len();
    let mut kinds = BTreeMap::new();
    for a in 0..f {
        for b in a + 1..f {
            let edges = p.edges_of_pair(a, b);
            let kind = if !edges.is_empty() {
                MeetKind::OneEdge
            } else if p
                .vertices
                .iter()
                .any(|v| v.spheres.contains(&a) && v.spheres.contains(&b))
            {
                MeetKind::OneVertex
            } else {
                MeetKind::Nothing
            };
            kinds.insert([a, b], kind);
        }
    }
    kinds
}

fn face_signature(p: &BallPolyhedron, k: usize) -> (usize, usize) {
    (p.faces[k].cycles[0].len(), p.faces[k].vertex_ids().len())
}

/// Derive the edge and vertex maps from a face bijection and verify that
/// every inclusion is preserved. Returns `None` when the face map does not
/// extend.
fn extend_face_map(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
    face_map: &[usize],
) -> Option<LatticeIso> {
    let mut edge_map = vec![usize::MAX; p.edges.len()];
    for (e, edge) in p.edges.iter().enumerate() {
        let image_pair = [face_map[edge.spheres[0]], face_map[edge.spheres[1]]];
        let candidates = q.edges_of_pair(image_pair[0], image_pair[1]);
        if candidates.len() != 1 {
            return None;
        }
        edge_map[e] = candidates[0];
    }
    let mut used = vec![false; q.edges.len()];
    for &e in &edge_map {
        if used[e] {
            return None;
        }
        used[e] = true;
    }
    if edge_map.len() != q.edges.len() {
        return None;
    }

    let mut vertex_map = vec![usize::MAX; p.vertices.len()];
    for (v, vertex) in p.vertices.iter().enumerate() {
        let mut image_set: Vec<usize> = vertex.spheres.iter().map(|&k| face_map[k]).collect();
        image_set.sort_unstable();
        let found = q
            .vertices
            .iter()
            .position(|w| w.spheres.to_vec() == image_set)?;
        vertex_map[v] = found;
    }
    let mut used = vec![false; q.vertices.len()];
    for &v in &vertex_map {
        if used[v] {
            return None;
        }
        used[v] = true;
    }
    if vertex_map.len() != q.vertices.len() {
        return None;
    }

    // Endpoint consistency: the image of an edge's endpoints must be the
    // endpoints of the image edge.
    for (e, edge) in p.edges.iter().enumerate() {
        let mut ends: Vec<usize> = edge
            .distinct_endpoints()
            .iter()
            .map(|&v| vertex_map[v])
            .collect();
        ends.sort_unstable();
        let mut image_ends = q.edges[edge_map[e]].distinct_endpoints();
        image_ends.sort_unstable();
        if ends != image_ends {
            return None;
        }
    }
    Some(LatticeIso {
        face_map: face_map.to_vec(),
        edge_map,
        vertex_map,
    })
}

fn require_standard(p: &BallPolyhedron, which: &str) -> Result<(), RigidityError> {
    let report = is_standard(p);
    if !report.standard {
        return Err(RigidityError::NotStandard {
            detail: format!("{which}: {:?}", report.certificate),
        });
    }
    Ok(())
}

/// Search for an inclusion-preserving bijection between the face lattices.
/// Backtracks over face assignments with degree and meet-kind pruning; the
/// edge and vertex maps follow from the face map.
pub fn combinatorial_equivalence(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
) -> Result<Option<LatticeIso>, RigidityError> {
    let mut all = search_isos(p, q, true)?;
    Ok(all.pop())
}

/// Every lattice isomorphism, for symmetry-aware tests.
pub fn enumerate_lattice_isos(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
) -> Result<Vec<LatticeIso>, RigidityError> {
    search_isos(p, q, false)
}

fn search_isos(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
    first_only: bool,
) -> Result<Vec<LatticeIso>, RigidityError> {
    require_standard(p, "first operand")?;
    require_standard(q, "second operand")?;
    let fp = p.faces.len();
    if fp != q.faces.len() || p.edges.len() != q.edges.len() || p.vertices.len() != q.vertices.len()
    {
        return Ok(Vec::new());
    }

    let sig_p: Vec<(usize, usize)> = (0..fp).map(|k| face_signature(p, k)).collect();
    let sig_q: Vec<(usize, usize)> = (0..fp).map(|k| face_signature(q, k)).collect();
    let kinds_p = meet_kinds(p);
    let kinds_q = meet_kinds(q);

    let mut results = Vec::new();
    let mut assignment = vec![usize::MAX; fp];
    let mut used = vec![false; fp];

    fn backtrack(
        p: &BallPolyhedron,
        q: &BallPolyhedron,
        sig_p: &[(usize, usize)],
        sig_q: &[(usize, usize)],
        kinds_p: &BTreeMap<[usize; 2], MeetKind>,
        kinds_q: &BTreeMap<[usize; 2], MeetKind>,
        depth: usize,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        results: &mut Vec<LatticeIso>,
        first_only: bool,
    ) {
        if first_only && !results.is_empty() {
            return;
        }
        let fp = assignment.len();
        if depth == fp {
            if let Some(iso) = extend_face_map(p, q, assignment) {
                results.push(iso);
            }
            return;
        }
        for cand in 0..fp {
            if used[cand] || sig_q[cand] != sig_p[depth] {
                continue;
            }
            let ok = (0..depth).all(|prev| {
                let key_p = if prev < depth {
                    [prev, depth]
                } else {
                    [depth, prev]
                };
                let (a, b) = (assignment[prev], cand);
                let key_q = if a < b { [a, b] } else { [b, a] };
                kinds_p[&key_p] == kinds_q[&key_q]
            });
            if !ok {
                continue;
            }
            assignment[depth] = cand;
            used[cand] = true;
            backtrack(
                p,
                q,
                sig_p,
                sig_q,
                kinds_p,
                kinds_q,
                depth + 1,
                assignment,
                used,
                results,
                first_only,
            );
            assignment[depth] = usize::MAX;
            used[cand] = false;
        }
    }

    backtrack(
        p,
        q,
        &sig_p,
        &sig_q,
        &kinds_p,
        &kinds_q,
        0,
        &mut assignment,
        &mut used,
        &mut results,
        first_only,
    );
    Ok(results)
}

/// Build the lattice isomorphism induced by an explicit center relabeling,
/// if it is one.
pub fn lattice_iso_from_center_bijection(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
    face_map: &[usize],
) -> Option<LatticeIso> {
    if face_map.len() != p.faces.len() {
        return None;
    }
    extend_face_map(p, q, face_map)
}

/// A congruence between two ball-polyhedra: the isometry carrying the first
/// family's centers onto the second under the face correspondence.
#[derive(Clone, Debug)]
pub struct CongruenceWitness {
    pub isometry: Isometry,
    pub max_residual: f64,
    pub rms_residual: f64,
}

/// Fit an isometry sending each generating center to its partner under the
/// lattice isomorphism. Since every face lies on a unique generating
/// sphere, center congruence is body congruence.
pub fn congruent(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
    iso: &LatticeIso,
    eq_tol: f64,
) -> Result<CongruenceWitness, RigidityError> {
    let src: Vec<Point3> = p.centers().to_vec();
    let dst: Vec<Point3> = iso.face_map.iter().map(|&k| q.centers()[k]).collect();
    let fit_tol = Tolerance::new(eq_tol, eq_tol, eq_tol.min(1e-10));
    match fit_isometry(&src, &dst, &fit_tol) {
        Ok(fit) => Ok(CongruenceWitness {
            isometry: fit.isometry,
            max_residual: fit.max_residual,
            rms_residual: fit.rms_residual,
        }),
        Err(GeomError::NotCongruent { max_residual }) => {
            Err(RigidityError::NotCongruent { max_residual })
        }
        Err(other) => Err(RigidityError::PreconditionFailed {
            detail: other.to_string(),
        }),
    }
}
