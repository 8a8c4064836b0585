use super::vec::Vec3;

/// One spherical-cap constraint on unit directions: `<axis, u> >= min_cos`.
#[derive(Clone, Copy, Debug)]
pub struct CapConstraint {
    /// Unit cap axis.
    pub axis: Vec3,
    /// Cosine of the angular radius.
    pub min_cos: f64,
}

impl CapConstraint {
    pub fn margin(&self, u: Vec3) -> f64 {
        self.axis.dot(u) - self.min_cos
    }
}

/// Chebyshev direction of a spherical cap intersection: the unit vector
/// maximizing the smallest constraint margin, found by enumerating KKT
/// candidates with one, two, or three active constraints. Returns the best
/// direction and its margin; a positive margin certifies a direction
/// strictly interior to every cap.
pub fn max_margin_direction(caps: &[CapConstraint]) -> (Vec3, f64) {
    if caps.is_empty() {
        return (Vec3::new(0.0, 0.0, 1.0), f64::INFINITY);
    }
    let margin_of = |u: Vec3| {
        caps.iter()
            .map(|c| c.margin(u))
            .fold(f64::INFINITY, f64::min)
    };

    let mut best_u = caps[0].axis;
    let mut best_m = margin_of(best_u);
    let mut consider = |u: Vec3| {
        let m = margin_of(u);
        if m > best_m {
            best_m = m;
            best_u = u;
        }
    };

    // Single active constraint: the cap axis itself.
    for c in caps {
        consider(c.axis);
    }

    // Two active constraints with equal margins, optimum in their span.
    let n = caps.len();
    for i in 0..n {
        for j in i + 1..n {
            let (ai, aj) = (caps[i].axis, caps[j].axis);
            let g = ai.dot(aj);
            if (1.0 - g).abs() < 1e-14 || (1.0 + g).abs() < 1e-14 {
                continue;
            }
            // u = x ai + y aj with x - y = (b_i - b_j)/(1 - g) and |u| = 1.
            let c = (caps[i].min_cos - caps[j].min_cos) / (1.0 - g);
            let qa = 2.0 + 2.0 * g;
            let qb = 2.0 * c * (1.0 + g);
            let qc = c * c - 1.0;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                continue;
            }
            let sq = disc.sqrt();
            for y in [(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)] {
                let u = ai * (y + c) + aj * y;
                if u.norm_sq() > 1e-20 {
                    consider(u.unit());
                }
            }
        }
    }

    // Three active constraints: intersection of two equal-margin planes
    // with the unit sphere.
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let w1 = caps[i].axis - caps[j].axis;
                let w2 = caps[i].axis - caps[k].axis;
                let r1 = caps[i].min_cos - caps[j].min_cos;
                let r2 = caps[i].min_cos - caps[k].min_cos;
                let dir = w1.cross(w2);
                if dir.norm_sq() < 1e-24 {
                    continue;
                }
                let dir = dir.unit();
                // Particular solution in span{w1, w2}.
                let (g11, g12, g22) = (w1.dot(w1), w1.dot(w2), w2.dot(w2));
                let det = g11 * g22 - g12 * g12;
                if det.abs() < 1e-24 {
                    continue;
                }
                let alpha = (r1 * g22 - r2 * g12) / det;
                let beta = (g11 * r2 - g12 * r1) / det;
                let p0 = w1 * alpha + w2 * beta;
                let t2 = 1.0 - p0.norm_sq();
                if t2 < 0.0 {
                    continue;
                }
                let t = t2.sqrt();
                consider(p0 + dir * t);
                consider(p0 - dir * t);
            }
        }
    }

    (best_u, best_m)
}
