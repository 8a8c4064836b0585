use crate::instance::{write_atomic, InstanceFile};
use crate::mesh;
use crate::report::{
    angle_tables, classification_of, counts_of, voronoi_diags, CompareVerdict, ReportFile,
    VerifyVerdict,
};
use ballpoly_core::ball::{
    build, is_simplicial, is_standard, reduce_family, BallError, BallPolyhedron, UnitBallFamily,
};
use ballpoly_core::classify::{
    gen_normal_random, gen_standard_not_normal, is_normal, tetrahedron_centers, ClassifyError,
};
use ballpoly_core::geom::{Orientation, Tolerance};
use ballpoly_core::rigidity::{
    enumerate_lattice_isos, verify_alexandrov, verify_normal_global_rigidity, verify_stoker,
    RigidityError, DEFAULT_EQ_TOL,
};
use ballpoly_core::voronoi::VoronoiError;
use std::path::{Path, PathBuf};

/// Exit-code contract: 0 success, 1 parse/usage, 2 degenerate input,
/// 3 precondition failed, 4 negative verdict.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NEGATIVE: i32 = 4;

pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CmdError {
            code,
            message: message.into(),
        }
    }
}

fn degenerate(e: impl std::fmt::Display) -> CmdError {
    CmdError::new(EXIT_DEGENERATE, format!("degenerate input: {e}"))
}

fn ball_error(e: BallError) -> CmdError {
    degenerate(e)
}

fn classify_error(e: ClassifyError) -> CmdError {
    match e {
        ClassifyError::NotNormal { .. } => CmdError::new(EXIT_PRECONDITION, e.to_string()),
        other => degenerate(other),
    }
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => write_atomic(path, contents).map_err(|e| {
            CmdError::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

pub struct BuildOptions {
    pub input: PathBuf,
    pub out: Option<PathBuf>,
    pub auto_reduce: bool,
    pub reproducible: bool,
}

fn load_family(
    path: &Path,
    auto_reduce: bool,
    tol: &Tolerance,
) -> Result<(UnitBallFamily, Vec<usize>), CmdError> {
    let file = InstanceFile::load(path)
        .map_err(|e| CmdError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let centers = file.unit_centers();
    if auto_reduce {
        let outcome = reduce_family(&centers, tol).map_err(ball_error)?;
        Ok((outcome.family, outcome.removed))
    } else {
        Ok((UnitBallFamily::new(centers), Vec::new()))
    }
}

fn build_body(
    family: &UnitBallFamily,
    tol: &Tolerance,
) -> Result<(BallPolyhedron, ballpoly_core::ball::AngleData), CmdError> {
    build(family, tol).map_err(ball_error)
}

pub fn cmd_build(opts: &BuildOptions) -> Result<i32, CmdError> {
    let tol = Tolerance::default();
    let (family, removed) = load_family(&opts.input, opts.auto_reduce, &tol)?;
    let (p, angles) = build_body(&family, &tol)?;
    let standard = is_standard(&p);
    let simplicial = standard.standard && is_simplicial(&p);

    let mut report = ReportFile::new("build", p.centers(), opts.reproducible);
    report.counts = Some(counts_of(&p));
    report.classification = Some(classification_of(&standard, simplicial, &removed, None));
    report.angles = Some(angle_tables(&p, &angles));
    emit(opts.out.as_deref(), &report.to_json())?;
    Ok(EXIT_OK)
}

pub fn cmd_classify(opts: &BuildOptions) -> Result<i32, CmdError> {
    let tol = Tolerance::default();
    let (family, removed) = load_family(&opts.input, opts.auto_reduce, &tol)?;
    let (p, angles) = build_body(&family, &tol)?;
    let standard = is_standard(&p);
    let simplicial = standard.standard && is_simplicial(&p);
    // Families without a Voronoi vertex (coplanar or too small) have no
    // normality verdict; the rest of the classification still applies.
    let normal = match is_normal(&p, &tol) {
        Ok(d) => Some(d),
        Err(ClassifyError::CoplanarCenters) => None,
        Err(ClassifyError::Voronoi(VoronoiError::TooFewCenters { .. })) => None,
        Err(e) => return Err(classify_error(e)),
    };

    let mut report = ReportFile::new("classify", p.centers(), opts.reproducible);
    report.counts = Some(counts_of(&p));
    report.classification = Some(classification_of(
        &standard,
        simplicial,
        &removed,
        normal.as_ref(),
    ));
    report.angles = Some(angle_tables(&p, &angles));
    report.voronoi_vertices = normal.as_ref().map(voronoi_diags);
    emit(opts.out.as_deref(), &report.to_json())?;
    Ok(EXIT_OK)
}

pub struct CompareOptions {
    pub input_a: PathBuf,
    pub input_b: PathBuf,
    pub out: Option<PathBuf>,
    pub reproducible: bool,
}

pub fn cmd_compare(opts: &CompareOptions) -> Result<i32, CmdError> {
    let tol = Tolerance::default();
    let (family_a, _) = load_family(&opts.input_a, false, &tol)?;
    let (family_b, _) = load_family(&opts.input_b, false, &tol)?;
    let (pa, _) = build_body(&family_a, &tol)?;
    let (pb, _) = build_body(&family_b, &tol)?;

    let isos = enumerate_lattice_isos(&pa, &pb).map_err(rigidity_error)?;
    let mut report = ReportFile::new("compare", pa.centers(), opts.reproducible);
    let mut verdict = CompareVerdict {
        combinatorially_equivalent: !isos.is_empty(),
        congruent: None,
        orientation: None,
        rms_residual: None,
    };
    let mut code = EXIT_NEGATIVE;
    if !isos.is_empty() {
        let mut best: Option<ballpoly_core::rigidity::CongruenceWitness> = None;
        for iso in &isos {
            if let Ok(w) = ballpoly_core::rigidity::congruent(&pa, &pb, iso, 1e-7) {
                if best
                    .as_ref()
                    .is_none_or(|b| w.rms_residual < b.rms_residual)
                {
                    best = Some(w);
                }
            }
        }
        match best {
            Some(w) => {
                verdict.congruent = Some(true);
                verdict.orientation = Some(match w.isometry.orientation {
                    Orientation::Preserving => "preserving".to_string(),
                    Orientation::Reversing => "reversing".to_string(),
                });
                verdict.rms_residual = Some(w.rms_residual);
                code = EXIT_OK;
            }
            None => verdict.congruent = Some(false),
        }
    }
    report.compare = Some(verdict);
    emit(opts.out.as_deref(), &report.to_json())?;
    Ok(code)
}

fn rigidity_error(e: RigidityError) -> CmdError {
    match e {
        RigidityError::NotCongruent { .. } => CmdError::new(EXIT_NEGATIVE, e.to_string()),
        RigidityError::Ball(inner) => ball_error(inner),
        other => CmdError::new(EXIT_PRECONDITION, other.to_string()),
    }
}

pub struct VerifyOptions {
    pub input_a: PathBuf,
    pub input_b: PathBuf,
    pub theorem: String,
    pub out: Option<PathBuf>,
    pub reproducible: bool,
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<i32, CmdError> {
    let tol = Tolerance::default();
    let (family_a, _) = load_family(&opts.input_a, false, &tol)?;
    let (family_b, _) = load_family(&opts.input_b, false, &tol)?;
    let (pa, _) = build_body(&family_a, &tol)?;
    let (pb, _) = build_body(&family_b, &tol)?;

    let isos = enumerate_lattice_isos(&pa, &pb).map_err(rigidity_error)?;
    if isos.is_empty() {
        return Err(CmdError::new(
            EXIT_PRECONDITION,
            "the polyhedra are not combinatorially equivalent",
        ));
    }

    // The statements assume an equivalence with equal corresponding data;
    // try every isomorphism and keep the first whose preconditions hold.
    let mut verdict: Option<VerifyVerdict> = None;
    let mut last_precondition = String::new();
    for iso in &isos {
        let attempt = match opts.theorem.as_str() {
            "stoker" => verify_stoker(&pa, &pb, iso, &tol, DEFAULT_EQ_TOL).map(|r| VerifyVerdict {
                theorem: "stoker".to_string(),
                pass: r.pass,
                detail: format!(
                    "{} vertex and {} face sign sequences, medial verdict {:?}",
                    r.vertex_checks.len(),
                    r.face_checks.len(),
                    r.medial_outcome
                ),
                isomorphisms_tried: isos.len(),
                congruence_rms: Some(r.congruence.rms_residual),
                max_face_angle_diff: Some(r.max_face_angle_diff),
                max_dihedral_diff: None,
            }),
            "alexandrov" => {
                verify_alexandrov(&pa, &pb, iso, &tol, DEFAULT_EQ_TOL).map(|r| VerifyVerdict {
                    theorem: "alexandrov".to_string(),
                    pass: r.pass,
                    detail: "equal face angles force equal dihedral angles".to_string(),
                    isomorphisms_tried: isos.len(),
                    congruence_rms: None,
                    max_face_angle_diff: None,
                    max_dihedral_diff: Some(r.max_dihedral_diff),
                })
            }
            "normal-rigidity" => verify_normal_global_rigidity(&pa, &pb, iso, &tol, DEFAULT_EQ_TOL)
                .map(|r| VerifyVerdict {
                    theorem: "normal-rigidity".to_string(),
                    pass: r.pass,
                    detail: format!(
                        "duality ok on both sides: {}, {} facet registrations",
                        r.duality_first.is_ok() && r.duality_second.is_ok(),
                        r.facet_residuals.len()
                    ),
                    isomorphisms_tried: isos.len(),
                    congruence_rms: Some(r.congruence.rms_residual),
                    max_face_angle_diff: None,
                    max_dihedral_diff: Some(r.max_center_edge_diff),
                }),
            other => {
                return Err(CmdError::new(
                    EXIT_PARSE,
                    format!("unknown theorem '{other}'"),
                ))
            }
        };
        match attempt {
            Ok(v) => {
                verdict = Some(v);
                break;
            }
            Err(RigidityError::PreconditionFailed { detail }) => {
                last_precondition = detail;
            }
            Err(RigidityError::SideLengthMismatch { index, left, right }) => {
                last_precondition = format!("side {index}: {left} vs {right}");
            }
            Err(e) => return Err(rigidity_error(e)),
        }
    }

    let Some(verdict) = verdict else {
        return Err(CmdError::new(
            EXIT_PRECONDITION,
            format!("no isomorphism satisfies the hypotheses: {last_precondition}"),
        ));
    };
    let pass = verdict.pass;
    let mut report = ReportFile::new("verify", pa.centers(), opts.reproducible);
    report.verify = Some(verdict);
    emit(opts.out.as_deref(), &report.to_json())?;
    Ok(if pass { EXIT_OK } else { EXIT_NEGATIVE })
}

pub struct GenOptions {
    pub kind: String,
    pub count: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

pub fn cmd_gen(opts: &GenOptions) -> Result<i32, CmdError> {
    let tol = Tolerance::default();
    let family = match opts.kind.as_str() {
        "tetra" => UnitBallFamily::new(tetrahedron_centers(1.0)),
        "normal" => {
            gen_normal_random(opts.count.max(4), opts.seed, &tol).map_err(classify_error)?
        }
        "standard-not-normal" => {
            gen_standard_not_normal(opts.seed, &tol).map_err(classify_error)?
        }
        other => return Err(CmdError::new(EXIT_PARSE, format!("unknown kind '{other}'"))),
    };
    let file = InstanceFile::new(family.centers.clone());
    let mut text = serde_json::to_string_pretty(&file).expect("instance serialization");
    text.push('\n');
    emit(opts.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

pub struct ExportOptions {
    pub input: PathBuf,
    pub segments: usize,
    pub out: Option<PathBuf>,
}

pub fn cmd_export_obj(opts: &ExportOptions) -> Result<i32, CmdError> {
    let tol = Tolerance::default();
    let (family, _) = load_family(&opts.input, false, &tol)?;
    let (p, _) = build_body(&family, &tol)?;
    let mesh =
        mesh::tessellate(&p, opts.segments).map_err(|e| CmdError::new(EXIT_DEGENERATE, e))?;
    emit(opts.out.as_deref(), &mesh.to_obj())?;
    Ok(EXIT_OK)
}
