use ballpoly_core::ball::{AngleData, BallPolyhedron, StandardnessReport};
use ballpoly_core::classify::NormalityDiagnostics;
use ballpoly_core::geom::Point3;
use serde::Serialize;

/// Machine-readable command report. Field order is fixed by the struct, so
/// serialization is byte-stable for identical inputs; the timestamp is the
/// only nondeterministic field and is suppressed under `--reproducible`.
#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub command: String,
    pub instance_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<AngleTables>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub voronoi_vertices: Option<Vec<VoronoiVertexDiag>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compare: Option<CompareVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub faces: usize,
    pub edges: usize,
    pub vertices: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub reduced: bool,
    pub removed_balls: Vec<usize>,
    pub standard: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_certificate: Option<String>,
    pub simplicial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal: Option<NormalFlags>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalFlags {
    pub normal: bool,
    pub degenerate: bool,
    pub by_circumscribed_radius: bool,
    pub by_vertex_interiority: bool,
    pub by_cell_distance: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AngleTables {
    pub dihedral: Vec<EdgeAngleRow>,
    pub face_angles: Vec<FaceAngleRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeAngleRow {
    pub edge: usize,
    pub spheres: [usize; 2],
    pub alpha: f64,
    pub arc_length: f64,
    pub circle_radius: f64,
    pub full_circle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceAngleRow {
    pub vertex: usize,
    pub face: usize,
    pub beta: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VoronoiVertexDiag {
    pub point: [f64; 3],
    pub region: Vec<usize>,
    pub rho: f64,
    pub delta: f64,
    pub interior_margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareVerdict {
    pub combinatorially_equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub congruent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rms_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyVerdict {
    pub theorem: String,
    pub pass: bool,
    pub detail: String,
    pub isomorphisms_tried: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub congruence_rms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_face_angle_diff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dihedral_diff: Option<f64>,
}

impl ReportFile {
    pub fn new(command: &str, centers: &[Point3], reproducible: bool) -> Self {
        ReportFile {
            schema_version: 1,
            command: command.to_string(),
            instance_digest: digest(centers),
            generated_at: if reproducible {
                None
            } else {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .ok()
                    .map(|d| d.as_secs())
            },
            counts: None,
            classification: None,
            angles: None,
            voronoi_vertices: None,
            compare: None,
            verify: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// FNV-1a over the canonical coordinate rendering; stable across runs and
/// platforms for identical normalized instances.
pub fn digest(centers: &[Point3]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    let mut feed = |bytes: &[u8]| {
        for b in bytes {
            hash ^= *b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    };
    for c in centers {
        feed(format!("{:.17e},{:.17e},{:.17e};", c.x, c.y, c.z).as_bytes());
    }
    format!("{hash:016x}")
}

pub fn counts_of(p: &BallPolyhedron) -> Counts {
    Counts {
        faces: p.faces.len(),
        edges: p.edges.len(),
        vertices: p.vertices.len(),
    }
}

pub fn angle_tables(p: &BallPolyhedron, angles: &AngleData) -> AngleTables {
    AngleTables {
        dihedral: p
            .edges
            .iter()
            .enumerate()
            .map(|(e, edge_rec)| EdgeAngleRow {
                edge: e,
                spheres: edge_rec.spheres,
                alpha: angles.dihedral[e],
                arc_length: angles.edge_length[e],
                circle_radius: edge_rec.circle_radius,
                full_circle: edge_rec.endpoints().is_none(),
            })
            .collect(),
        face_angles: angles
            .face_angles
            .iter()
            .map(|(&(vertex, face), &beta)| FaceAngleRow { vertex, face, beta })
            .collect(),
    }
}

pub fn classification_of(
    standard: &StandardnessReport,
    simplicial: bool,
    removed: &[usize],
    normal: Option<&NormalityDiagnostics>,
) -> Classification {
    Classification {
        reduced: removed.is_empty(),
        removed_balls: removed.to_vec(),
        standard: standard.standard,
        standard_certificate: standard.certificate.as_ref().map(|c| format!("{c:?}")),
        simplicial,
        normal: normal.map(|d| NormalFlags {
            normal: d.normal,
            degenerate: d.degenerate,
            by_circumscribed_radius: d.by_circumscribed_radius,
            by_vertex_interiority: d.by_vertex_interiority,
            by_cell_distance: d.by_cell_distance,
        }),
    }
}

pub fn voronoi_diags(d: &NormalityDiagnostics) -> Vec<VoronoiVertexDiag> {
    d.vertices
        .iter()
        .map(|v| VoronoiVertexDiag {
            point: [v.point.x, v.point.y, v.point.z],
            region: v.region.clone(),
            rho: v.rho,
            delta: v.delta,
            interior_margin: v.interior_margin,
        })
        .collect()
}
