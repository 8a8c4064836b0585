#![allow(clippy::needless_range_loop)]

/// A three-level graded poset: rank 0, 1 and 2 elements with the inclusion
/// relations between consecutive ranks and between the extremes. Both the
/// vertex-edge-face structure of a ball-polyhedron and the boundary lattice
/// of a convex polytope fit this shape.
#[derive(Clone, Debug)]
pub struct GradedPoset {
    pub rank_sizes: [usize; 3],
    /// Per rank-0 element: the rank-1 elements above it.
    pub above01: Vec<Vec<usize>>,
    /// Per rank-1 element: the rank-2 elements above it.
    pub above12: Vec<Vec<usize>>,
    /// Per rank-0 element: the rank-2 elements above it.
    pub above02: Vec<Vec<usize>>,
}

impl GradedPoset {
    fn normalize(&mut self) {
        for list in self
            .above01
            .iter_mut()
            .chain(&mut self.above12)
            .chain(&mut self.above02)
        {
            list.sort_unstable();
            list.dedup();
        }
    }

    pub fn new(
        rank_sizes: [usize; 3],
        above01: Vec<Vec<usize>>,
        above12: Vec<Vec<usize>>,
        above02: Vec<Vec<usize>>,
    ) -> Self {
        let mut p = GradedPoset {
            rank_sizes,
            above01,
            above12,
            above02,
        };
        p.normalize();
        p
    }

    /// Rank-1 elements below a given rank-2 element.
    fn below21(&self, f: usize) -> Vec<usize> {
        (0..self.rank_sizes[1])
            .filter(|&e| self.above12[e].contains(&f))
            .collect()
    }

    /// Rank-0 elements below a given rank-2 element.
    fn below20(&self, f: usize) -> Vec<usize> {
        (0..self.rank_sizes[0])
            .filter(|&v| self.above02[v].contains(&f))
            .collect()
    }
}

/// An inclusion-reversing bijection between two graded posets: rank `r` of
/// the first maps onto rank `2 - r` of the second.
#[derive(Clone, Debug)]
pub struct AntiIsomorphism {
    /// A rank-2 element to a B rank-0 element.
    pub top_to_bottom: Vec<usize>,
    /// A rank-1 to B rank-1.
    pub mid_to_mid: Vec<usize>,
    /// A rank-0 to B rank-2.
    pub bottom_to_top: Vec<usize>,
}

/// Search for an inclusion-reversing bijection by backtracking over the
/// rank-2 assignment with degree-sequence pruning. The mid and bottom maps
/// are forced by the top map (a mid element is determined by the tops above
/// it, a bottom by the mid/top sets above it), so only the top assignment
/// branches.
pub fn find_anti_isomorphism(a: &GradedPoset, b: &GradedPoset) -> Option<AntiIsomorphism> {
    if a.rank_sizes[0] != b.rank_sizes[2]
        || a.rank_sizes[1] != b.rank_sizes[1]
        || a.rank_sizes[2] != b.rank_sizes[0]
    {
        return None;
    }
    let nf = a.rank_sizes[2];

    // Degree signatures. A rank-2 element of A must land on a B rank-0
    // element with matching counts of elements below/above.
    let a_top_deg: Vec<(usize, usize)> = (0..nf)
        .map(|f| (a.below21(f).len(), a.below20(f).len()))
        .collect();
    let b_bottom_deg: Vec<(usize, usize)> = (0..b.rank_sizes[0])
        .map(|v| (b.above01[v].len(), b.above02[v].len()))
        .collect();

    let candidates: Vec<Vec<usize>> = (0..nf)
        .map(|f| {
            (0..b.rank_sizes[0])
                .filter(|&v| b_bottom_deg[v] == a_top_deg[f])
                .collect::<Vec<_>>()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }

    // Assign the most constrained elements first.
    let mut order: Vec<usize> = (0..nf).collect();
    order.sort_by_key(|&f| candidates[f].len());

    let mut assignment = vec![usize::MAX; nf];
    let mut used = vec![false; b.rank_sizes[0]];
    if !assign(a, b, &order, &candidates, 0, &mut assignment, &mut used) {
        return None;
    }
    complete(a, b, &assignment)
}

fn assign(
    a: &GradedPoset,
    b: &GradedPoset,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return complete(a, b, assignment).is_some();
    }
    let f = order[depth];
    for &v in &candidates[f] {
        if used[v] {
            continue;
        }
        // Consistency with already-assigned tops: two A-tops sharing a mid
        // element must map to B-bottoms joined by a mid element, and
        // conversely.
        let compatible = order[..depth].iter().all(|&g| {
            let w = assignment[g];
            let share_mid_a = (0..a.rank_sizes[1])
                .any(|e| a.above12[e].contains(&f) && a.above12[e].contains(&g));
            let share_mid_b = (0..b.rank_sizes[1]).any(|e| {
                let below = b_mid_below(b, e);
                below.contains(&v) && below.contains(&w)
            });
            share_mid_a == share_mid_b
        });
        if !compatible {
            continue;
        }
        assignment[f] = v;
        used[v] = true;
        if assign(a, b, order, candidates, depth + 1, assignment, used) {
            return true;
        }
        assignment[f] = usize::MAX;
        used[v] = false;
    }
    false
}

fn b_mid_below(b: &GradedPoset, e: usize) -> Vec<usize> {
    (0..b.rank_sizes[0])
        .filter(|&v| b.above01[v].contains(&e))
        .collect()
}

/// Derive the mid and bottom maps from a full top assignment and verify
/// every inclusion both ways.
fn complete(a: &GradedPoset, b: &GradedPoset, assignment: &[usize]) -> Option<AntiIsomorphism> {
    let ne = a.rank_sizes[1];
    let nv = a.rank_sizes[0];

    let mut mid_to_mid = vec![usize::MAX; ne];
    for e in 0..ne {
        let tops: Vec<usize> = a.above12[e].iter().map(|&f| assignment[f]).collect();
        // The image must be the unique B mid element whose bottoms are
        // exactly the images of the tops above e.
        let mut tops_sorted = tops.clone();
        tops_sorted.sort_unstable();
        let image = (0..b.rank_sizes[1]).find(|&be| b_mid_below(b, be) == tops_sorted)?;
        mid_to_mid[e] = image;
    }
    // Injectivity.
    let mut seen = vec![false; b.rank_sizes[1]];
    for &m in &mid_to_mid {
        if seen[m] {
            return None;
        }
        seen[m] = true;
    }

    let mut bottom_to_top = vec![usize::MAX; nv];
    for v in 0..nv {
        let mut mids: Vec<usize> = a.above01[v].iter().map(|&e| mid_to_mid[e]).collect();
        mids.sort_unstable();
        let image = (0..b.rank_sizes[2]).find(|&bf| {
            let below: Vec<usize> = (0..b.rank_sizes[1])
                .filter(|&be| b.above12[be].contains(&bf))
                .collect();
            below == mids
        })?;
        bottom_to_top[v] = image;
    }
    let mut seen = vec![false; b.rank_sizes[2]];
    for &m in &bottom_to_top {
        if seen[m] {
            return None;
        }
        seen[m] = true;
    }

    // Full order-reversal audit: v < e in A must become image(e) < image(v)
    // in B, and likewise for vertex-face incidences.
    for v in 0..nv {
        for e in 0..ne {
            let rel_a = a.above01[v].contains(&e);
            let image_v = bottom_to_top[v];
            let rel_b = b.above12[mid_to_mid[e]].contains(&image_v);
            if rel_a != rel_b {
                return None;
            }
        }
        for f in 0..a.rank_sizes[2] {
            let rel_a = a.above02[v].contains(&f);
            let rel_b = b.above02[assignment[f]].contains(&bottom_to_top[v]);
            if rel_a != rel_b {
                return None;
            }
        }
    }
    Some(AntiIsomorphism {
        top_to_bottom: assignment.to_vec(),
        mid_to_mid,
        bottom_to_top,
    })
}
