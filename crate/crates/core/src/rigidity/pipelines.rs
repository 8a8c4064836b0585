use super::cauchy::{
    legendre_cauchy, sign_counting_check, LegendreCauchyOutcome, SignCountingOutcome, SignLabel,
    SignSequence,
};
use super::{congruent, CongruenceWitness, LatticeIso, RigidityError};
use crate::ball::{
    angle_data, is_standard, medial_graph, normal_image, normal_image_ordered,
    spherical_convex_hull, spherical_convex_hull_ordered, vertex_star, AngleData, BallPolyhedron,
};
use crate::classify::{check_center_duality, is_normal, DualityReport};
use crate::geom::{center_distance_from_dihedral, fit_isometry, Point3, Tolerance};

/// Default tolerance for "equal corresponding angles / lengths" between
/// independently built instances; looser than the kernel tolerance and
/// configurable per call.
pub const DEFAULT_EQ_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct VertexSignCheck {
    pub vertex: usize,
    /// Signs of the face-angle differences around the vertex.
    pub sequence: SignSequence,
    /// Legendre-Cauchy verdict on the paired normal images.
    pub outcome: LegendreCauchyOutcome,
}

#[derive(Clone, Debug)]
pub struct FaceSignCheck {
    pub face: usize,
    /// Signs of the face-angle differences around the face.
    pub sequence: SignSequence,
    /// Legendre-Cauchy verdict on the paired spherical convex hulls.
    pub outcome: LegendreCauchyOutcome,
}

#[derive(Clone, Debug)]
pub struct StokerReport {
    pub vertex_checks: Vec<VertexSignCheck>,
    pub face_checks: Vec<FaceSignCheck>,
    pub medial_outcome: SignCountingOutcome,
    pub max_face_angle_diff: f64,
    pub congruence: CongruenceWitness,
    pub pass: bool,
}

fn require_standard_pair(p: &BallPolyhedron, q: &BallPolyhedron) -> Result<(), RigidityError> {
    for (body, name) in [(p, "first"), (q, "second")] {
        let report = is_standard(body);
        if !report.standard {
            return Err(RigidityError::NotStandard {
                detail: format!("{name} operand: {:?}", report.certificate),
            });
        }
    }
    Ok(())
}

fn check_dihedrals_and_lengths(
    p: &BallPolyhedron,
    ap: &AngleData,
    aq: &AngleData,
    iso: &LatticeIso,
    eq_tol: f64,
    check_lengths: bool,
) -> Result<(), RigidityError> {
    for e in 0..p.edges.len() {
        let img = iso.edge_map[e];
        let da = (ap.dihedral[e] - aq.dihedral[img]).abs();
        if da > eq_tol {
            return Err(RigidityError::PreconditionFailed {
                detail: format!(
                    "dihedral angles differ by {da:.3e} at edge {e} (pair {:?})",
                    p.edges[e].spheres
                ),
            });
        }
        if check_lengths {
            let dl = (ap.edge_length[e] - aq.edge_length[img]).abs();
            if dl > eq_tol {
                return Err(RigidityError::PreconditionFailed {
                    detail: format!(
                        "edge lengths differ by {dl:.3e} at edge {e} (pair {:?})",
                        p.edges[e].spheres
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Face-angle difference at a (vertex, face) slot under the isomorphism.
fn beta_diff(ap: &AngleData, aq: &AngleData, iso: &LatticeIso, vertex: usize, face: usize) -> f64 {
    let b = ap.face_angles[&(vertex, face)];
    let b_img = aq.face_angles[&(iso.vertex_map[vertex], iso.face_map[face])];
    b - b_img
}

/// Verify the Stoker-style statement on a concrete pair: combinatorially
/// equivalent standard ball-polyhedra with equal corresponding edge lengths
/// and dihedral angles must have equal face angles (witnessed by all-zero
/// sign sequences per vertex and per face and by the sign-counting check on
/// the dual of the medial graph) and must be congruent.
pub fn verify_stoker(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
    iso: &LatticeIso,
    tol: &Tolerance,
    eq_tol: f64,
) -> Result<StokerReport, RigidityError> {
    require_standard_pair(p, q)?;
    let ap = angle_data(p)?;
    let aq = angle_data(q)?;
    check_dihedrals_and_lengths(p, &ap, &aq, iso, eq_tol, true)?;

    // Per vertex: the normal images have side lengths pi minus the matched
    // dihedral angles, so the Legendre-Cauchy lemma applies to them.
    let mut vertex_checks = Vec::with_capacity(p.vertices.len());
    let mut max_diff = 0.0f64;
    for v in 0..p.vertices.len() {
        let star = vertex_star(p, v)?;
        let image_order: Vec<usize> = star.faces.iter().map(|&k| iso.face_map[k]).collect();
        let t_star = normal_image(p, v)?;
        let t_star_img = normal_image_ordered(q, iso.vertex_map[v], &image_order)?;
        let outcome = legendre_cauchy(&t_star, &t_star_img, tol, eq_tol)?;
        let diffs: Vec<f64> = star
            .faces
            .iter()
            .map(|&k| beta_diff(&ap, &aq, iso, v, k))
            .collect();
        for d in &diffs {
            max_diff = max_diff.max(d.abs());
        }
        vertex_checks.push(VertexSignCheck {
            vertex: v,
            sequence: SignSequence::from_differences(&diffs, eq_tol),
            outcome,
        });
    }

    // Per face: the spherical convex hulls of corresponding faces have
    // equal side lengths (equal carrier radii and arc lengths), and their
    // angle differences repeat the face-angle differences.
    let mut face_checks = Vec::with_capacity(p.faces.len());
    for k in 0..p.faces.len() {
        let vertex_cycle = &p.faces[k].vertex_cycles[0];
        if vertex_cycle.len() < 3 {
            continue;
        }
        let hull = spherical_convex_hull(p, k)?;
        let image_cycle: Vec<usize> = vertex_cycle.iter().map(|&v| iso.vertex_map[v]).collect();
        let hull_img = spherical_convex_hull_ordered(q, iso.face_map[k], &image_cycle)?;
        let outcome = legendre_cauchy(&hull, &hull_img, tol, eq_tol)?;
        let diffs: Vec<f64> = vertex_cycle
            .iter()
            .map(|&v| beta_diff(&ap, &aq, iso, v, k))
            .collect();
        face_checks.push(FaceSignCheck {
            face: k,
            sequence: SignSequence::from_differences(&diffs, eq_tol),
            outcome,
        });
    }

    // Medial labeling: each arc of the medial graph carries the sign of the
    // face-angle difference at its (face, vertex) corner; the sign-counting
    // lemma runs on the dual graph.
    let medial = medial_graph(p)?;
    let labels: Vec<SignLabel> = medial
        .arc_slots
        .iter()
        .map(|&(face, vertex)| SignLabel::of(beta_diff(&ap, &aq, iso, vertex, face), eq_tol))
        .collect();
    let medial_outcome = sign_counting_check(&medial.graph.dual(), &labels)?;

    let congruence = congruent(p, q, iso, eq_tol.max(tol.eps_len))?;
    let pass = vertex_checks.iter().all(|c| c.sequence.all_zero())
        && face_checks.iter().all(|c| c.sequence.all_zero())
        && medial_outcome == SignCountingOutcome::ConsistentAllZero;
    Ok(StokerReport {
        vertex_checks,
        face_checks,
        medial_outcome,
        max_face_angle_diff: max_diff,
        congruence,
        pass,
    })
}

#[derive(Clone, Debug)]
pub struct AlexandrovReport {
    pub max_dihedral_diff: f64,
    pub pass: bool,
}

/// Verify the Alexandrov-style statement: equal corresponding face angles
/// force equal corresponding inner dihedral angles.
pub fn verify_alexandrov(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
    iso: &LatticeIso,
    _tol: &Tolerance,
    eq_tol: f64,
) -> Result<AlexandrovReport, RigidityError> {
    require_standard_pair(p, q)?;
    let ap = angle_data(p)?;
    let aq = angle_data(q)?;

    for &(v, k) in ap.face_angles.keys() {
        let diff = beta_diff(&ap, &aq, iso, v, k);
        if diff.abs() > eq_tol {
            return Err(RigidityError::PreconditionFailed {
                detail: format!(
                    "face angles differ by {:.3e} at vertex {v}, face {k}",
                    diff.abs()
                ),
            });
        }
    }

    let mut max_dihedral_diff = 0.0f64;
    for e in 0..p.edges.len() {
        let diff = (ap.dihedral[e] - aq.dihedral[iso.edge_map[e]]).abs();
        max_dihedral_diff = max_dihedral_diff.max(diff);
    }
    Ok(AlexandrovReport {
        max_dihedral_diff,
        pass: max_dihedral_diff <= eq_tol,
    })
}

#[derive(Clone, Debug)]
pub struct NormalRigidityReport {
    pub duality_first: DualityReport,
    pub duality_second: DualityReport,
    pub max_center_edge_diff: f64,
    /// Per corresponding boundary facet of the center-polyhedra: the
    /// registration residual of the inscribed polygons.
    pub facet_residuals: Vec<f64>,
    pub congruence: CongruenceWitness,
    pub pass: bool,
}

/// Verify global rigidity of normal ball-polyhedra with respect to their
/// dihedral angles, step by step: the lattice duality holds on both sides,
/// corresponding center-polyhedron edges have equal lengths (each length is
/// pinned by the matched dihedral angle), corresponding hull facets are
/// congruent inscribed polygons, and the bodies are congruent.
pub fn verify_normal_global_rigidity(
    p: &BallPolyhedron,
    q: &BallPolyhedron,
    iso: &LatticeIso,
    tol: &Tolerance,
    eq_tol: f64,
) -> Result<NormalRigidityReport, RigidityError> {
    for (body, name) in [(p, "first"), (q, "second")] {
        let d = is_normal(body, tol)?;
        if !d.normal {
            return Err(RigidityError::NotNormal {
                detail: format!("{name} operand"),
            });
        }
    }
    let ap = angle_data(p)?;
    let aq = angle_data(q)?;
    check_dihedrals_and_lengths(p, &ap, &aq, iso, eq_tol, false)?;

    // Step 1: duality on both sides.
    let duality_first = check_center_duality(p, tol)?;
    let duality_second = check_center_duality(q, tol)?;

    // Step 2: center-polyhedron edge lengths. The dihedral angle pins the
    // center distance, so matched dihedrals force matched hull edges.
    let mut max_center_edge_diff = 0.0f64;
    for (e, edge) in p.edges.iter().enumerate() {
        let [a, b] = edge.spheres;
        let d_p = p.centers()[a].dist(p.centers()[b]);
        let d_from_alpha = center_distance_from_dihedral(ap.dihedral[e]).map_err(|err| {
            RigidityError::PreconditionFailed {
                detail: err.to_string(),
            }
        })?;
        debug_assert!((d_p - d_from_alpha).abs() < 1e-9);
        let [ia, ib] = [iso.face_map[a], iso.face_map[b]];
        let d_q = q.centers()[ia].dist(q.centers()[ib]);
        max_center_edge_diff = max_center_edge_diff.max((d_p - d_q).abs());
    }
    if max_center_edge_diff > eq_tol {
        return Err(RigidityError::PreconditionFailed {
            detail: format!("center-polyhedron edges differ by {max_center_edge_diff:.3e}"),
        });
    }

    // Step 3: corresponding hull facets are congruent cyclic polygons.
    let fit_tol = Tolerance::new(eq_tol.max(tol.eps_len), tol.eps_ang, tol.eps_cosp);
    let mut facet_residuals = Vec::new();
    for facet in &duality_first.center_polyhedron.facets {
        let src: Vec<Point3> = facet.polygon.iter().map(|&i| p.centers()[i]).collect();
        let image_region: Vec<usize> = facet.polygon.iter().map(|&i| iso.face_map[i]).collect();
        let mut sorted_image = image_region.clone();
        sorted_image.sort_unstable();
        if !duality_second
            .center_polyhedron
            .facets
            .iter()
            .any(|g| g.region == sorted_image)
        {
            return Err(RigidityError::PreconditionFailed {
                detail: format!("facet {:?} has no partner facet", facet.region),
            });
        }
        let dst: Vec<Point3> = image_region.iter().map(|&i| q.centers()[i]).collect();
        match fit_isometry(&src, &dst, &fit_tol) {
            Ok(fit) => facet_residuals.push(fit.max_residual),
            Err(_) => {
                return Err(RigidityError::NotCongruent {
                    max_residual: f64::INFINITY,
                });
            }
        }
    }

    // Step 4: congruence of the bodies.
    let congruence = congruent(p, q, iso, eq_tol.max(tol.eps_len))?;
    let pass = duality_first.is_ok() && duality_second.is_ok();
    Ok(NormalRigidityReport {
        duality_first,
        duality_second,
        max_center_edge_diff,
        facet_residuals,
        congruence,
        pass,
    })
}
