/// Absolute tolerances used by every predicate in the crate.
///
/// Inputs are normalized to unit-ball scale, so all relevant lengths are
/// O(1) and absolute bands are meaningful. Every operation that makes a
/// tolerance-based decision takes a `Tolerance` explicitly; there are no
/// hidden globals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Length comparisons (coincidence, residuals, containment bands).
    pub eps_len: f64,
    /// Angle comparisons, in radians.
    pub eps_ang: f64,
    /// Coplanarity / cosphericity / collinearity detection.
    pub eps_cosp: f64,
}

impl Tolerance {
    pub fn new(eps_len: f64, eps_ang: f64, eps_cosp: f64) -> Self {
        assert!(
            eps_len > 0.0 && eps_ang > 0.0 && eps_cosp > 0.0,
            "tolerances must be strictly positive"
        );
        Tolerance {
            eps_len,
            eps_ang,
            eps_cosp,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_len: 1e-9,
            eps_ang: 1e-9,
            eps_cosp: 1e-10,
        }
    }
}
