use super::mat::{jacobi_eigen_sym3, Mat3};
use super::tolerance::Tolerance;
use super::vec::{centroid, Point3, Vec3};
use super::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// A Euclidean isometry `x -> R x + t` with `R` orthogonal.
#[derive(Clone, Copy, Debug)]
pub struct Isometry {
    pub rotation: Mat3,
    pub translation: Vec3,
    pub orientation: Orientation,
}

impl Isometry {
    pub fn new(rotation: Mat3, translation: Vec3, tol: &Tolerance) -> Self {
        let defect = rotation.orthogonality_defect();
        assert!(
            defect <= tol.eps_len.max(1e-7),
            "rotation part is not orthogonal (defect {defect:.3e})"
        );
        let det = rotation.det();
        let orientation = if det > 0.0 {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        };
        Isometry {
            rotation,
            translation,
            orientation,
        }
    }

    pub fn identity() -> Self {
        Isometry {
            rotation: Mat3::IDENTITY,
            translation: Vec3::ZERO,
            orientation: Orientation::Preserving,
        }
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        self.rotation.mul_vec(p) + self.translation
    }

    pub fn apply_all(&self, pts: &[Point3]) -> Vec<Point3> {
        pts.iter().map(|p| self.apply(*p)).collect()
    }
}

/// Outcome of a successful isometry fit.
#[derive(Clone, Copy, Debug)]
pub struct IsometryFit {
    pub isometry: Isometry,
    pub max_residual: f64,
    pub rms_residual: f64,
    /// Source points span fewer than two dimensions: the fit is valid but
    /// not unique.
    pub degenerate: bool,
}

/// Least-squares rigid registration of `src` onto `dst` with given
/// index correspondence (centroid alignment plus orthogonal Procrustes).
/// Both determinant branches are tried, so orientation-reversing isometries
/// are found as well. Succeeds only if the fitted map reproduces `dst`
/// within `tol.eps_len` pointwise.
pub fn fit_isometry(
    src: &[Point3],
    dst: &[Point3],
    tol: &Tolerance,
) -> Result<IsometryFit, GeomError> {
    if src.len() != dst.len() {
        return Err(GeomError::LengthMismatch {
            left: src.len(),
            right: dst.len(),
        });
    }
    if src.len() < 3 {
        return Err(GeomError::TooFewPoints {
            got: src.len(),
            need: 3,
        });
    }
    let sc = centroid(src);
    let dc = centroid(dst);

    // Cross-covariance H = sum (src_i - sc)(dst_i - dc)^T.
    let mut h = [[0.0f64; 3]; 3];
    for (s, d) in src.iter().zip(dst.iter()) {
        let a = *s - sc;
        let b = *d - dc;
        let av = [a.x, a.y, a.z];
        let bv = [b.x, b.y, b.z];
        for i in 0..3 {
            for j in 0..3 {
                h[i][j] += av[i] * bv[j];
            }
        }
    }
    let h = Mat3 { m: h };

    // SVD of H via the spectral decomposition of H^T H.
    let hth = h.transpose().mul_mat(&h);
    let (vals, v) = jacobi_eigen_sym3(&hth);
    let sigma: Vec<f64> = vals.iter().map(|l| l.max(0.0).sqrt()).collect();
    let sig_max = sigma[0].max(1e-300);
    // sigma = sqrt(lambda), so eigenvalue round-off of order eps * lambda_max
    // shows up as sigma noise of order sqrt(eps) * sigma_max.
    let cutoff = 1e-7 * sig_max;
    let rank = sigma.iter().filter(|s| **s > cutoff).count();
    let degenerate = rank < 2;

    // Left singular vectors; missing columns completed orthonormally.
    let mut u_cols: Vec<Vec3> = Vec::with_capacity(3);
    for k in 0..3 {
        if sigma[k] > cutoff {
            u_cols.push((h.mul_vec(v.col(k)) / sigma[k]).unit());
        }
    }
    match u_cols.len() {
        0 => {
            u_cols.push(Vec3::new(1.0, 0.0, 0.0));
            u_cols.push(Vec3::new(0.0, 1.0, 0.0));
            u_cols.push(Vec3::new(0.0, 0.0, 1.0));
        }
        1 => {
            let a = u_cols[0].any_orthonormal();
            u_cols.push(a);
            u_cols.push(u_cols[0].cross(a));
        }
        2 => {
            let c = u_cols[0].cross(u_cols[1]);
            u_cols.push(c.unit());
        }
        _ => {}
    }
    let u = Mat3::from_cols(u_cols[0], u_cols[1], u_cols[2]);

    // Candidate maps src -> dst: with H = U S V^T the trace objective is
    // maximized by R = V U^T. The flipped variant negates the smallest
    // singular direction (the Kabsch determinant correction), so one of the
    // two is the best proper rotation and the other the best reflection.
    let base = v.mul_mat(&u.transpose());
    let flipped = {
        let mut uf = u;
        for i in 0..3 {
            uf.m[i][2] = -uf.m[i][2];
        }
        v.mul_mat(&uf.transpose())
    };
    let (proper, improper) = if base.det() >= 0.0 {
        (base, flipped)
    } else {
        (flipped, base)
    };

    let evaluate = |r: &Mat3| -> (f64, f64, Vec3) {
        let t = dc - r.mul_vec(sc);
        let mut max_r = 0.0f64;
        let mut sq = 0.0f64;
        for (s, d) in src.iter().zip(dst.iter()) {
            let res = (r.mul_vec(*s) + t - *d).norm();
            max_r = max_r.max(res);
            sq += res * res;
        }
        (max_r, (sq / src.len() as f64).sqrt(), t)
    };

    // Planar sources are matched by a rotation and by a reflection alike;
    // prefer the orientation-preserving branch whenever it fits.
    for r in [&proper, &improper] {
        let (max_r, rms, t) = evaluate(r);
        if max_r <= tol.eps_len {
            return Ok(IsometryFit {
                isometry: Isometry::new(*r, t, tol),
                max_residual: max_r,
                rms_residual: rms,
                degenerate,
            });
        }
    }
    let (max_r, _, _) = evaluate(&proper);
    let (max_i, _, _) = evaluate(&improper);
    Err(GeomError::NotCongruent {
        max_residual: max_r.min(max_i),
    })
}
