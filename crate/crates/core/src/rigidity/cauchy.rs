use super::RigidityError;
use crate::ball::{PlaneGraph, SphericalPolygon};
use crate::geom::Tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignLabel {
    Plus,
    Minus,
    Zero,
}

impl SignLabel {
    pub fn of(value: f64, zero_band: f64) -> SignLabel {
        if value > zero_band {
            SignLabel::Plus
        } else if value < -zero_band {
            SignLabel::Minus
        } else {
            SignLabel::Zero
        }
    }
}

/// A cyclic sequence of sign labels; zeros are skipped when counting sign
/// changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence(pub Vec<SignLabel>);

impl SignSequence {
    pub fn from_differences(diffs: &[f64], zero_band: f64) -> Self {
        SignSequence(diffs.iter().map(|d| SignLabel::of(*d, zero_band)).collect())
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(|s| *s == SignLabel::Zero)
    }

    /// Number of sign changes around the cycle, ignoring zeros; always even.
    pub fn sign_changes(&self) -> usize {
        let nonzero: Vec<SignLabel> = self
            .0
            .iter()
            .copied()
            .filter(|s| *s != SignLabel::Zero)
            .collect();
        if nonzero.len() < 2 {
            return 0;
        }
        (0..nonzero.len())
            .filter(|&i| nonzero[i] != nonzero[(i + 1) % nonzero.len()])
            .count()
    }
}

/// Outcome of the spherical Legendre-Cauchy comparison of two convex
/// polygons with equal corresponding side lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LegendreCauchyOutcome {
    AllZero,
    /// At least four sign changes, as the lemma demands.
    SignChanges {
        count: usize,
        sequence: SignSequence,
    },
    /// Nonzero entries with fewer than four changes: a precondition failure
    /// or a numerical bug, never a valid input.
    Violation {
        count: usize,
        sequence: SignSequence,
    },
}

/// Compare the interior angles of two spherically convex polygons (on open
/// hemispheres, equal vertex counts, equal corresponding side lengths
/// within `eq_tol`): the cyclic sequence of angle differences either
/// vanishes or shows at least four sign changes.
pub fn legendre_cauchy(
    u: &SphericalPolygon,
    u_prime: &SphericalPolygon,
    tol: &Tolerance,
    eq_tol: f64,
) -> Result<LegendreCauchyOutcome, RigidityError> {
    if u.vertices.len() != u_prime.vertices.len() {
        return Err(RigidityError::SideLengthMismatch {
            index: usize::MAX,
            left: u.vertices.len() as f64,
            right: u_prime.vertices.len() as f64,
        });
    }
    if !u.is_convex(tol) || !u_prime.is_convex(tol) {
        return Err(RigidityError::NotConvex);
    }
    if !u.in_open_hemisphere(tol) || !u_prime.in_open_hemisphere(tol) {
        return Err(RigidityError::NotHemispherical);
    }
    for (i, (a, b)) in u.side_lengths.iter().zip(&u_prime.side_lengths).enumerate() {
        if (a - b).abs() > eq_tol {
            return Err(RigidityError::SideLengthMismatch {
                index: i,
                left: *a,
                right: *b,
            });
        }
    }

    let diffs: Vec<f64> = u
        .interior_angles
        .iter()
        .zip(&u_prime.interior_angles)
        .map(|(a, b)| a - b)
        .collect();
    let sequence = SignSequence::from_differences(&diffs, eq_tol);
    if sequence.all_zero() {
        return Ok(LegendreCauchyOutcome::AllZero);
    }
    let count = sequence.sign_changes();
    if count >= 4 {
        Ok(LegendreCauchyOutcome::SignChanges { count, sequence })
    } else {
        Ok(LegendreCauchyOutcome::Violation { count, sequence })
    }
}

/// Outcome of checking the sign-counting hypothesis on a labeled plane
/// graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignCountingOutcome {
    /// The hypothesis holds at every node and all labels are zero.
    ConsistentAllZero,
    /// The hypothesis fails at this node: neither all-zero nor four sign
    /// changes around it.
    ViolationAt { node: usize },
    /// The hypothesis holds everywhere yet some label is nonzero - a
    /// counterexample to the lemma, never expected.
    NonzeroSurvivor { plus: usize, minus: usize },
}

fn node_sequences(g: &PlaneGraph, labels: &[SignLabel]) -> Vec<SignSequence> {
    g.rotations
        .iter()
        .map(|rot| SignSequence(rot.iter().map(|&dart| labels[dart / 2]).collect()))
        .collect()
}

/// Verify the sign-counting hypothesis (around each node: all labels zero
/// or at least four sign changes in rotation order) and, when it holds,
/// confirm the lemma's conclusion that every label is zero.
pub fn sign_counting_check(
    g: &PlaneGraph,
    labels: &[SignLabel],
) -> Result<SignCountingOutcome, RigidityError> {
    if !g.is_simple() {
        return Err(RigidityError::NotSimple);
    }
    if !g.euler_ok() {
        return Err(RigidityError::NotPlane);
    }
    assert_eq!(labels.len(), g.arc_count(), "one label per arc");

    for (node, seq) in node_sequences(g, labels).iter().enumerate() {
        if !seq.all_zero() && seq.sign_changes() < 4 {
            return Ok(SignCountingOutcome::ViolationAt { node });
        }
    }
    let plus = labels.iter().filter(|l| **l == SignLabel::Plus).count();
    let minus = labels.iter().filter(|l| **l == SignLabel::Minus).count();
    if plus + minus == 0 {
        Ok(SignCountingOutcome::ConsistentAllZero)
    } else {
        Ok(SignCountingOutcome::NonzeroSurvivor { plus, minus })
    }
}

/// Exhaustive certificate for a small plane graph: over all labelings of
/// the arcs with plus, minus and zero, only the all-zero labeling satisfies
/// the local hypothesis at every node.
#[derive(Clone, Debug)]
pub struct SignCountingCertificate {
    pub labelings_checked: u64,
    pub satisfying: u64,
    /// Satisfying labelings with at least one nonzero label; the lemma says
    /// zero.
    pub nontrivial_satisfying: u64,
}

pub fn brute_force_sign_counting(g: &PlaneGraph) -> Result<SignCountingCertificate, RigidityError> {
    if !g.is_simple() {
        return Err(RigidityError::NotSimple);
    }
    if !g.euler_ok() {
        return Err(RigidityError::NotPlane);
    }
    let m = g.arc_count();
    assert!(m <= 13, "exhaustive enumeration is limited to small graphs");

    let total = 3u64.pow(m as u32);
    let mut satisfying = 0u64;
    let mut nontrivial = 0u64;
    let mut labels = vec![SignLabel::Zero; m];
    for code in 0..total {
        let mut c = code;
        let mut any_nonzero = false;
        for slot in labels.iter_mut() {
            *slot = match c % 3 {
                0 => SignLabel::Zero,
                1 => SignLabel::Plus,
                _ => SignLabel::Minus,
            };
            if *slot != SignLabel::Zero {
                any_nonzero = true;
            }
            c /= 3;
        }
        let ok = g.rotations.iter().all(|rot| {
            let seq = SignSequence(rot.iter().map(|&dart| labels[dart / 2]).collect());
            seq.all_zero() || seq.sign_changes() >= 4
        });
        if ok {
            satisfying += 1;
            if any_nonzero {
                nontrivial += 1;
            }
        }
    }
    Ok(SignCountingCertificate {
        labelings_checked: total,
        satisfying,
        nontrivial_satisfying: nontrivial,
    })
}
