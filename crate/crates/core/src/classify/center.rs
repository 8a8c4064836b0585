use super::poset::{find_anti_isomorphism, GradedPoset};
use super::{is_normal, ClassifyError};
use crate::ball::{is_standard, BallPolyhedron};
use crate::geom::{Point3, Tolerance};
use crate::voronoi::{delaunay_complex, farthest_voronoi, truncated_delaunay, DelaunayComplex};

/// A boundary facet of the center-polyhedron: sites in convex cyclic order.
#[derive(Clone, Debug)]
pub struct CenterFacet {
    /// Sorted site indices.
    pub region: Vec<usize>,
    /// The same sites in polygon order.
    pub polygon: Vec<usize>,
}

/// The convex hull of the generating centers with the face lattice induced
/// by the Delaunay complex: vertices are the centers, edges the hull edges
/// of the complex, facets its boundary facets.
#[derive(Clone, Debug)]
pub struct CenterPolyhedron {
    pub centers: Vec<Point3>,
    /// Sorted indices of hull vertices (all centers, for a reduced family).
    pub vertices: Vec<usize>,
    /// Sorted index pairs of hull edges.
    pub hull_edges: Vec<[usize; 2]>,
    pub facets: Vec<CenterFacet>,
}

impl CenterPolyhedron {
    /// Boundary lattice as a graded poset (vertices, edges, facets).
    pub fn poset(&self) -> GradedPoset {
        let nv = self.centers.len();
        let above01 = (0..nv)
            .map(|v| {
                self.hull_edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.contains(&v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let above12 = self
            .hull_edges
            .iter()
            .map(|e| {
                self.facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.region.contains(&e[0]) && f.region.contains(&e[1]))
                    .filter(|(fi, _)| facet_has_polygon_edge(&self.facets[*fi], e))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let above02 = (0..nv)
            .map(|v| {
                self.facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.region.contains(&v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        GradedPoset::new(
            [nv, self.hull_edges.len(), self.facets.len()],
            above01,
            above12,
            above02,
        )
    }
}

fn facet_has_polygon_edge(facet: &CenterFacet, pair: &[usize; 2]) -> bool {
    let n = facet.polygon.len();
    (0..n).any(|i| {
        let a = facet.polygon[i];
        let b = facet.polygon[(i + 1) % n];
        (a == pair[0] && b == pair[1]) || (a == pair[1] && b == pair[0])
    })
}

fn center_polyhedron_from_complex(complex: &DelaunayComplex) -> CenterPolyhedron {
    let hull_edges: Vec<[usize; 2]> = complex
        .edges
        .iter()
        .filter(|e| e.on_hull)
        .map(|e| e.pair)
        .collect();
    let facets: Vec<CenterFacet> = complex
        .facets
        .iter()
        .filter(|f| f.is_boundary())
        .map(|f| CenterFacet {
            region: f.region.clone(),
            polygon: f.polygon.clone(),
        })
        .collect();
    CenterPolyhedron {
        centers: complex.centers.clone(),
        vertices: complex.hull_vertices.clone(),
        hull_edges,
        facets,
    }
}

/// Build the center-polyhedron of a ball-polyhedron. Constructs for any
/// non-coplanar family, normal or not.
pub fn center_polyhedron(
    p: &BallPolyhedron,
    tol: &Tolerance,
) -> Result<CenterPolyhedron, ClassifyError> {
    let complex = delaunay_complex(p.centers(), tol).map_err(|e| match e {
        crate::voronoi::VoronoiError::CoplanarInput => ClassifyError::CoplanarCenters,
        other => ClassifyError::Voronoi(other),
    })?;
    Ok(center_polyhedron_from_complex(&complex))
}

/// Outcome of the duality verification between a normal ball-polyhedron
/// and its center-polyhedron.
#[derive(Clone, Debug)]
pub struct DualityReport {
    /// The truncated Delaunay complex equals the full complex.
    pub complexes_identical: bool,
    /// The polyhedron passed the standardness check.
    pub standard: bool,
    /// The index-wise bijection (face k to center k, edges to hull edges,
    /// vertices to boundary facets) holds with order reversed.
    pub natural_bijection_ok: bool,
    /// A rank-preserving anti-isomorphism was found by search.
    pub anti_isomorphism_found: bool,
    pub violations: Vec<String>,
    pub center_polyhedron: CenterPolyhedron,
}

impl DualityReport {
    pub fn is_ok(&self) -> bool {
        self.complexes_identical
            && self.standard
            && self.natural_bijection_ok
            && self.anti_isomorphism_found
            && self.violations.is_empty()
    }
}

/// The vertex-edge-face structure of a built polyhedron as a graded poset
/// (the bottom and top elements are implicit).
pub fn vef_poset(p: &BallPolyhedron) -> GradedPoset {
    let nv = p.vertices.len();
    let ne = p.edges.len();
    let above01 = (0..nv)
        .map(|v| {
            (0..ne)
                .filter(|&e| p.edges[e].distinct_endpoints().contains(&v))
                .collect()
        })
        .collect();
    let above12 = (0..ne).map(|e| p.edges[e].spheres.to_vec()).collect();
    let above02 = (0..nv).map(|v| p.vertices[v].spheres.to_vec()).collect();
    GradedPoset::new([nv, ne, p.faces.len()], above01, above12, above02)
}

/// Verify the duality between a normal ball-polyhedron and its
/// center-polyhedron: the truncated and full Delaunay complexes coincide,
/// the body is standard, and the natural inclusion-reversing bijection
/// (faces to centers, edges to hull edges, vertices to boundary facets)
/// holds, with an independent anti-isomorphism search as a cross-check.
pub fn check_center_duality(
    p: &BallPolyhedron,
    tol: &Tolerance,
) -> Result<DualityReport, ClassifyError> {
    let diagnostics = is_normal(p, tol)?;
    if !diagnostics.normal {
        let worst = diagnostics
            .vertices
            .iter()
            .map(|v| v.rho)
            .fold(f64::NEG_INFINITY, f64::max);
        return Err(ClassifyError::NotNormal {
            detail: format!("largest center-to-cell-vertex distance is {worst:.6}"),
        });
    }

    let centers = p.centers();
    let complex = delaunay_complex(centers, tol)?;
    let tiling = farthest_voronoi(centers, tol)?;
    let truncated = truncated_delaunay(&complex, &tiling, tol)?;
    let complexes_identical = truncated.equals_complex();

    let standard_report = is_standard(p);
    let cp = center_polyhedron_from_complex(&complex);
    let mut violations = Vec::new();

    if cp.vertices.len() != centers.len() {
        violations.push(format!(
            "only {} of {} centers are hull vertices",
            cp.vertices.len(),
            centers.len()
        ));
    }

    // Edges of the body against hull edges of the center-polyhedron.
    let mut body_pairs: Vec<[usize; 2]> = p.edges.iter().map(|e| e.spheres).collect();
    body_pairs.sort_unstable();
    if body_pairs.windows(2).any(|w| w[0] == w[1]) {
        violations.push("a sphere pair supports more than one edge".to_string());
    }
    let mut hull_pairs = cp.hull_edges.clone();
    hull_pairs.sort_unstable();
    if body_pairs != hull_pairs {
        violations.push(format!(
            "edge pairs {body_pairs:?} do not match hull edges {hull_pairs:?}"
        ));
    }

    // Vertices of the body against boundary facets.
    let mut vertex_regions: Vec<Vec<usize>> =
        p.vertices.iter().map(|v| v.spheres.to_vec()).collect();
    vertex_regions.sort();
    if vertex_regions.windows(2).any(|w| w[0] == w[1]) {
        violations.push("two vertices share a sphere set".to_string());
    }
    let mut facet_regions: Vec<Vec<usize>> = cp.facets.iter().map(|f| f.region.clone()).collect();
    facet_regions.sort();
    if vertex_regions != facet_regions {
        violations.push(format!(
            "vertex sphere sets {vertex_regions:?} do not match boundary facets {facet_regions:?}"
        ));
    }

    // Order reversal of the natural maps: a vertex below an edge must send
    // the edge's hull segment inside the vertex's facet region.
    for (e_id, edge) in p.edges.iter().enumerate() {
        for v in edge.distinct_endpoints() {
            let region = &p.vertices[v].spheres;
            if !edge.spheres.iter().all(|k| region.contains(k)) {
                violations.push(format!("edge {e_id} endpoint {v} misses its sphere pair"));
            }
        }
    }

    let natural_bijection_ok = violations.is_empty();
    let anti = find_anti_isomorphism(&vef_poset(p), &cp.poset());

    Ok(DualityReport {
        complexes_identical,
        standard: standard_report.standard,
        natural_bijection_ok,
        anti_isomorphism_found: anti.is_some(),
        violations,
        center_polyhedron: cp,
    })
}
