//! Rate pairs, down-closed convex rate regions in the first quadrant, the
//! channel symmetry property, the six extreme operating points, the exact
//! capacity region they span, and the per-atom domination bound.

use crate::capacity::{closed_form_capacity, is_weakly_symmetric};
use crate::channel::{validate_ptt_structure, Direction, MarginalFamily, TwcSpec};
use crate::error::{Error, Result};
use crate::prob::{JointInput, ProbVec};

/// Tolerance under which hull vertices are deduplicated and near-collinear
/// chain vertices merged.
pub const HULL_MERGE_TOLERANCE: f64 = 1e-12;

/// Slack used for the containment verdicts in region comparisons.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

/// A pair of one-way rates in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    /// Rate from user 1 to user 2.
    pub r1: f64,
    /// Rate from user 2 to user 1.
    pub r2: f64,
}

impl RatePair {
    /// Bundles two rates; rates are expected to be finite and nonnegative.
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    /// True when `self` is componentwise at least `other - slack`.
    pub fn dominates(&self, other: &RatePair, slack: f64) -> bool {
        self.r1 >= other.r1 - slack && self.r2 >= other.r2 - slack
    }
}

impl std::fmt::Display for RatePair {
    /// 4-decimal rendering used by reports: `(0.4105, 0.5918)`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:.4}, {:.4})", self.r1, self.r2)
    }
}

/// A down-closed convex region in the first quadrant, represented by its
/// Pareto chain: the boundary vertices from `(0, max R2)` to `(max R1, 0)`
/// in order of increasing `R1`.
///
/// A region degenerate in one or both coordinates collapses to a single
/// vertex (`(0, max R2)`, `(max R1, 0)`, or the origin).
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    vertices: Vec<RatePair>,
}

impl RateRegion {
    /// The Pareto chain, in order of increasing `R1`.
    pub fn vertices(&self) -> &[RatePair] {
        &self.vertices
    }

    /// Largest achievable `R1`.
    pub fn max_r1(&self) -> f64 {
        self.vertices.last().map_or(0.0, |v| v.r1)
    }

    /// Largest achievable `R2`.
    pub fn max_r2(&self) -> f64 {
        self.vertices.first().map_or(0.0, |v| v.r2)
    }

    /// True when `point`, shrunk toward the origin by `slack` in each
    /// coordinate (sup-norm slack), lies in the region.
    pub fn contains(&self, point: &RatePair, slack: f64) -> bool {
        let q = RatePair::new((point.r1 - slack).max(0.0), (point.r2 - slack).max(0.0));
        if q.r1 > self.max_r1() || q.r2 > self.max_r2() {
            return false;
        }
        // Walking the chain left to right keeps the region on the right-hand
        // side of every edge: inside means no left turn anywhere.
        for edge in self.vertices.windows(2) {
            let (u, v) = (edge[0], edge[1]);
            let cross = (v.r1 - u.r1) * (q.r2 - u.r2) - (v.r2 - u.r2) * (q.r1 - u.r1);
            if cross > 0.0 {
                return false;
            }
        }
        true
    }

    /// The boundary of the full region as a closed polygon starting and
    /// ending at the origin (used for distance computations).
    pub(crate) fn boundary_polygon(&self) -> Vec<RatePair> {
        let origin = RatePair::new(0.0, 0.0);
        let mut polygon = Vec::with_capacity(self.vertices.len() + 2);
        polygon.push(origin);
        polygon.extend_from_slice(&self.vertices);
        polygon.push(origin);
        polygon
    }
}

/// Builds the down-closed convex hull of a set of achievable rate pairs and
/// returns its Pareto chain.
///
/// Down-closure is imposed by augmenting every point with its axis
/// projections and the origin, so the chain always starts on the `R2` axis
/// and ends on the `R1` axis. Vertices within [`HULL_MERGE_TOLERANCE`] are
/// deduplicated and collinear vertices merged.
pub fn convex_hull_2d(points: &[RatePair]) -> Result<RateRegion> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("hull of an empty point set".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if !(p.r1.is_finite() && p.r2.is_finite() && p.r1 >= 0.0 && p.r2 >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "point {i} = ({}, {}) is not a finite nonnegative rate pair",
                p.r1, p.r2
            )));
        }
    }

    let max_r1 = points.iter().fold(0.0f64, |m, p| m.max(p.r1));
    let max_r2 = points.iter().fold(0.0f64, |m, p| m.max(p.r2));

    // Degenerate regions collapse to a single representative vertex.
    if max_r1 <= 0.0 && max_r2 <= 0.0 {
        return Ok(RateRegion { vertices: vec![RatePair::new(0.0, 0.0)] });
    }
    if max_r1 <= 0.0 {
        return Ok(RateRegion { vertices: vec![RatePair::new(0.0, max_r2)] });
    }
    if max_r2 <= 0.0 {
        return Ok(RateRegion { vertices: vec![RatePair::new(max_r1, 0.0)] });
    }

    // Down-closure: each point also stands for its two axis projections.
    // Only the best R2 per distinct R1 can appear on the chain.
    let mut candidates: Vec<RatePair> = Vec::with_capacity(points.len() + 2);
    candidates.push(RatePair::new(0.0, max_r2));
    candidates.push(RatePair::new(max_r1, 0.0));
    candidates.extend(points.iter().copied());
    candidates.sort_by(|a, b| a.r1.partial_cmp(&b.r1).expect("finite rates"));

    // Cluster R1 values closer than the merge tolerance, keeping each
    // cluster's largest R1 and R2.
    let mut columns: Vec<RatePair> = Vec::new();
    for p in candidates {
        match columns.last_mut() {
            Some(last) if p.r1 - last.r1 <= HULL_MERGE_TOLERANCE => {
                last.r1 = last.r1.max(p.r1);
                last.r2 = last.r2.max(p.r2);
            }
            _ => columns.push(p),
        }
    }
    if columns[0].r1 <= HULL_MERGE_TOLERANCE {
        columns[0].r1 = 0.0;
    }

    // Monotone chain over the column maxima: keep clockwise turns only.
    let mut chain: Vec<RatePair> = Vec::with_capacity(columns.len());
    for p in columns {
        while chain.len() >= 2 {
            let a = chain[chain.len() - 2];
            let b = chain[chain.len() - 1];
            let cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
            if cross >= -HULL_MERGE_TOLERANCE {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }

    // Close the chain on the R1 axis.
    let last = *chain.last().expect("chain is nonempty");
    if last.r2 > HULL_MERGE_TOLERANCE {
        chain.push(RatePair::new(last.r1, 0.0));
    } else if last.r2 != 0.0 {
        chain.last_mut().expect("chain is nonempty").r2 = 0.0;
    }

    Ok(RateRegion { vertices: chain })
}

/// Per-state verdict entering a [`SymmetryReport`].
#[derive(Debug, Clone)]
pub struct StateSymmetry {
    /// The receiver-side state (the symbol held by the other user).
    pub state: usize,
    /// Whether the active rows of this state matrix are weakly symmetric.
    pub weakly_symmetric: bool,
    /// Closed-form capacity of this state, when it exists.
    pub capacity: Option<f64>,
}

/// Per-direction verdicts entering a [`SymmetryReport`].
#[derive(Debug, Clone)]
pub struct DirectionSymmetry {
    /// Which way this family transmits.
    pub direction: Direction,
    /// One entry per state, in state order.
    pub states: Vec<StateSymmetry>,
}

/// Outcome of checking the channel symmetry property.
#[derive(Debug, Clone)]
pub struct SymmetryReport {
    /// True when the property holds in both directions.
    pub holds: bool,
    /// Forward (1->2) then backward (2->1) verdicts.
    pub directions: [DirectionSymmetry; 2],
    /// One entry per violated requirement.
    pub violations: Vec<String>,
}

impl SymmetryReport {
    /// The capacity table `[direction][state]`, available only when the
    /// property holds.
    pub fn capacity(&self, direction: Direction, state: usize) -> Option<f64> {
        let d = match direction {
            Direction::OneToTwo => &self.directions[0],
            Direction::TwoToOne => &self.directions[1],
        };
        d.states[state].capacity
    }
}

fn check_family_symmetry(family: &MarginalFamily, violations: &mut Vec<String>) -> DirectionSymmetry {
    let mut states = Vec::with_capacity(family.num_states());
    for state in 0..family.num_states() {
        let matrix = family.state(state);
        let active = matrix
            .nonzero_rows()
            .expect("validated PTT channels have at least 3 input symbols");
        let weakly_symmetric = is_weakly_symmetric(&active);
        let capacity = if weakly_symmetric {
            Some(
                closed_form_capacity(matrix)
                    .expect("uniform idle row and weak symmetry imply the closed form")
                    .capacity,
            )
        } else {
            violations.push(format!(
                "direction {}, state {state}: active rows are not weakly symmetric",
                family.direction()
            ));
            None
        };
        states.push(StateSymmetry { state, weakly_symmetric, capacity });
    }

    // All active states (receiver holds a nonzero symbol) must share one capacity.
    let active_caps: Vec<(usize, f64)> = states
        .iter()
        .skip(1)
        .filter_map(|s| s.capacity.map(|c| (s.state, c)))
        .collect();
    if let Some(&(first_state, first_cap)) = active_caps.first() {
        for &(state, cap) in &active_caps[1..] {
            if (cap - first_cap).abs() > crate::channel::STRUCTURE_TOLERANCE {
                violations.push(format!(
                    "direction {}: state {state} capacity {cap} differs from state \
                     {first_state} capacity {first_cap}",
                    family.direction()
                ));
            }
        }
    }

    DirectionSymmetry { direction: family.direction(), states }
}

/// Checks the channel symmetry property: in both directions, every state
/// matrix must have weakly symmetric active rows, and all active states
/// (conditioning symbol nonzero) must share a single capacity.
///
/// Fails with a structure error when the channel is not a valid push-to-talk
/// channel to begin with.
pub fn check_symmetry_property(spec: &TwcSpec) -> Result<SymmetryReport> {
    let structure = validate_ptt_structure(spec);
    if !structure.passed() {
        return Err(Error::Structure(structure.violations.join("; ")));
    }
    let mut violations = Vec::new();
    let forward = check_family_symmetry(spec.forward(), &mut violations);
    let backward = check_family_symmetry(spec.backward(), &mut violations);
    Ok(SymmetryReport {
        holds: violations.is_empty(),
        directions: [forward, backward],
        violations,
    })
}

/// The six extreme operating points of a symmetric push-to-talk channel,
/// each with the product input achieving it.
///
/// In the order stored: both users idle; both users active; only user 1
/// active against an idle listener; only user 2 active against an idle
/// listener; user 1 active while user 2 jams with an active symbol; user 2
/// active while user 1 jams.
#[derive(Debug, Clone)]
pub struct CornerSet {
    pairs: [RatePair; 6],
    inputs: [(ProbVec, ProbVec); 6],
}

impl CornerSet {
    /// Number of corners (always 6).
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Never empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The rate pair of corner `i` (0-based, in stored order).
    pub fn pair(&self, i: usize) -> RatePair {
        self.pairs[i]
    }

    /// All six rate pairs in stored order.
    pub fn pairs(&self) -> &[RatePair; 6] {
        &self.pairs
    }

    /// The product input `(P_{X1}, P_{X2})` achieving corner `i`.
    pub fn input(&self, i: usize) -> &(ProbVec, ProbVec) {
        &self.inputs[i]
    }

    /// Short labels for the six corners, in stored order.
    pub fn labels() -> [&'static str; 6] {
        ["both-idle", "both-active", "solo-1", "solo-2", "jammed-1", "jammed-2"]
    }
}

/// Computes the six extreme operating points from the per-state capacities.
///
/// Writing `C[dir][state]` for the closed-form capacity of a direction's
/// state matrix, the corners are `(0, 0)`, `(C[fwd][1], C[bwd][1])`,
/// `(C[fwd][0], 0)`, `(0, C[bwd][0])`, `(C[fwd][1], 0)` and
/// `(0, C[bwd][1])`.
///
/// Fails when the channel symmetry property does not hold.
pub fn corner_points(spec: &TwcSpec) -> Result<CornerSet> {
    let report = check_symmetry_property(spec)?;
    if !report.holds {
        return Err(Error::Unsupported(format!(
            "channel symmetry property does not hold: {}",
            report.violations.join("; ")
        )));
    }
    let cap = |direction, state| {
        report
            .capacity(direction, state)
            .expect("symmetric channels have a full capacity table")
    };
    let c_fwd_idle = cap(Direction::OneToTwo, 0);
    let c_fwd_active = cap(Direction::OneToTwo, 1);
    let c_bwd_idle = cap(Direction::TwoToOne, 0);
    let c_bwd_active = cap(Direction::TwoToOne, 1);

    let idle1 = ProbVec::delta(spec.r1(), 0);
    let idle2 = ProbVec::delta(spec.r2(), 0);
    let active1 = ProbVec::uniform_on_nonzero(spec.r1());
    let active2 = ProbVec::uniform_on_nonzero(spec.r2());
    let jam1 = ProbVec::delta(spec.r1(), 1);
    let jam2 = ProbVec::delta(spec.r2(), 1);

    let pairs = [
        RatePair::new(0.0, 0.0),
        RatePair::new(c_fwd_active, c_bwd_active),
        RatePair::new(c_fwd_idle, 0.0),
        RatePair::new(0.0, c_bwd_idle),
        RatePair::new(c_fwd_active, 0.0),
        RatePair::new(0.0, c_bwd_active),
    ];
    let inputs = [
        (idle1.clone(), idle2.clone()),
        (active1.clone(), active2.clone()),
        (active1.clone(), idle2),
        (idle1, active2.clone()),
        (active1, jam2),
        (jam1, active2),
    ];

    // The solo and jammed corners sit on the axes by construction; anything
    // else means the rates above were assembled wrong.
    assert!(pairs[2].r2 == 0.0 && pairs[4].r2 == 0.0, "solo/jammed corners left the R1 axis");
    assert!(pairs[3].r1 == 0.0 && pairs[5].r1 == 0.0, "solo/jammed corners left the R2 axis");

    Ok(CornerSet { pairs, inputs })
}

/// The capacity region of a symmetric push-to-talk channel: the down-closed
/// convex hull of all six extreme operating points.
pub fn capacity_region(spec: &TwcSpec) -> Result<RateRegion> {
    let corners = corner_points(spec)?;
    convex_hull_2d(corners.pairs())
}

/// A conservative variant of [`capacity_region`] that, before taking the
/// hull, collapses each axis pair (solo and jammed corner on the same axis)
/// to its componentwise minimum.
///
/// This can only shrink the region; it coincides with [`capacity_region`]
/// when idling beside the listener never beats talking through jamming.
pub fn capacity_region_min_corners(spec: &TwcSpec) -> Result<RateRegion> {
    let corners = corner_points(spec)?;
    let p = corners.pairs();
    let axis1 = RatePair::new(p[2].r1.min(p[4].r1), 0.0);
    let axis2 = RatePair::new(0.0, p[3].r2.min(p[5].r2));
    convex_hull_2d(&[p[0], p[1], axis1, axis2])
}

/// The per-atom domination bound for an arbitrary joint input on a symmetric
/// push-to-talk channel.
///
/// Partitioning the joint's mass into both-idle `w[0]`, both-active `w[1]`,
/// only-user-1-active `w[2]` and only-user-2-active `w[3]`, the pair
/// `(w[1] C[fwd][1] + w[2] C[fwd][0], w[1] C[bwd][1] + w[3] C[bwd][0])`
/// dominates the exact rate pair of the joint componentwise. Returns the
/// bounding pair and the four weights.
pub fn domination_decomposition(
    spec: &TwcSpec,
    joint: &JointInput,
) -> Result<(RatePair, [f64; 4])> {
    if joint.r1() != spec.r1() || joint.r2() != spec.r2() {
        return Err(Error::DimensionMismatch(format!(
            "joint input is {}x{} but the channel is {}x{}",
            joint.r1(),
            joint.r2(),
            spec.r1(),
            spec.r2()
        )));
    }
    let corners = corner_points(spec)?;
    let c_fwd_idle = corners.pair(2).r1;
    let c_fwd_active = corners.pair(1).r1;
    let c_bwd_idle = corners.pair(3).r2;
    let c_bwd_active = corners.pair(1).r2;

    let mut weights = [0.0; 4];
    for x1 in 0..joint.r1() {
        for x2 in 0..joint.r2() {
            let mass = joint.mass(x1, x2);
            let bucket = match (x1 == 0, x2 == 0) {
                (true, true) => 0,
                (false, false) => 1,
                (false, true) => 2,
                (true, false) => 3,
            };
            weights[bucket] += mass;
        }
    }

    let bound = RatePair::new(
        weights[1] * c_fwd_active + weights[2] * c_fwd_idle,
        weights[1] * c_bwd_active + weights[3] * c_bwd_idle,
    );
    Ok((bound, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{shannon_ptt, table2, TransitionMatrix};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn pairs(raw: &[(f64, f64)]) -> Vec<RatePair> {
        raw.iter().map(|&(a, b)| RatePair::new(a, b)).collect()
    }

    #[test]
    fn hull_of_triangle_with_interior_points() {
        let region = convex_hull_2d(&pairs(&[
            (0.0, 1.0),
            (1.0, 0.0),
            (0.25, 0.25),
            (0.5, 0.5),
            (0.0, 0.0),
        ]))
        .unwrap();
        assert_eq!(region.vertices(), &pairs(&[(0.0, 1.0), (1.0, 0.0)]));
    }

    #[test]
    fn hull_keeps_strict_vertices_and_merges_collinear_ones() {
        // (0.5, 0.5) lies on the segment between the axis points: merged away.
        // (0.6, 0.6) sticks out: kept.
        let region = convex_hull_2d(&pairs(&[(0.0, 1.0), (1.0, 0.0), (0.6, 0.6)])).unwrap();
        assert_eq!(
            region.vertices(),
            &pairs(&[(0.0, 1.0), (0.6, 0.6), (1.0, 0.0)])
        );
    }

    #[test]
    fn hull_imposes_down_closure() {
        // A single interior point spans a rectangle.
        let region = convex_hull_2d(&pairs(&[(0.4, 0.7)])).unwrap();
        assert_eq!(
            region.vertices(),
            &pairs(&[(0.0, 0.7), (0.4, 0.7), (0.4, 0.0)])
        );
    }

    #[test]
    fn hull_handles_degenerate_regions() {
        let origin = convex_hull_2d(&pairs(&[(0.0, 0.0)])).unwrap();
        assert_eq!(origin.vertices(), &pairs(&[(0.0, 0.0)]));
        let vertical = convex_hull_2d(&pairs(&[(0.0, 0.3), (0.0, 0.8)])).unwrap();
        assert_eq!(vertical.vertices(), &pairs(&[(0.0, 0.8)]));
        let horizontal = convex_hull_2d(&pairs(&[(0.2, 0.0), (0.9, 0.0)])).unwrap();
        assert_eq!(horizontal.vertices(), &pairs(&[(0.9, 0.0)]));
        assert!(convex_hull_2d(&[]).is_err());
        assert!(convex_hull_2d(&pairs(&[(f64::NAN, 0.0)])).is_err());
        assert!(convex_hull_2d(&pairs(&[(-0.1, 0.0)])).is_err());
    }

    #[test]
    fn hull_is_idempotent() {
        let region = convex_hull_2d(&pairs(&[
            (0.0, 0.6667),
            (0.4105, 0.5918),
            (0.6667, 0.0),
            (0.1, 0.1),
        ]))
        .unwrap();
        let again = convex_hull_2d(region.vertices()).unwrap();
        assert_eq!(region, again);
    }

    #[test]
    fn containment_respects_slack() {
        let region = convex_hull_2d(&pairs(&[(0.0, 1.0), (1.0, 0.0)])).unwrap();
        assert!(region.contains(&RatePair::new(0.5, 0.5), 0.0));
        assert!(region.contains(&RatePair::new(0.0, 1.0), 1e-9));
        assert!(!region.contains(&RatePair::new(0.51, 0.5), 0.0));
        assert!(!region.contains(&RatePair::new(0.51, 0.5), 1e-9));
        assert!(region.contains(&RatePair::new(0.51, 0.5), 0.02));
        assert!(!region.contains(&RatePair::new(1.1, 0.0), 1e-9));
        // Degenerate region: only the axis segment.
        let segment = convex_hull_2d(&pairs(&[(0.0, 0.8)])).unwrap();
        assert!(segment.contains(&RatePair::new(0.0, 0.8), 0.0));
        assert!(!segment.contains(&RatePair::new(0.01, 0.4), 0.0));
        assert!(segment.contains(&RatePair::new(0.01, 0.4), 0.01));
    }

    #[test]
    fn symmetry_property_holds_for_builtins() {
        let report = check_symmetry_property(&shannon_ptt()).unwrap();
        assert!(report.holds);
        assert!(report.violations.is_empty());
        assert!(close(report.capacity(Direction::OneToTwo, 0).unwrap(), 1.0, 1e-12));
        assert!(close(report.capacity(Direction::OneToTwo, 1).unwrap(), 0.0, 1e-12));
        assert!(close(report.capacity(Direction::TwoToOne, 2).unwrap(), 0.0, 1e-12));

        let report = check_symmetry_property(&table2(0.0, 0.05, 0.0, 0.01).unwrap()).unwrap();
        assert!(report.holds);
        assert!(close(
            report.capacity(Direction::OneToTwo, 0).unwrap(),
            2.0 / 3.0,
            1e-12
        ));
        assert!(close(
            report.capacity(Direction::OneToTwo, 1).unwrap(),
            0.41045897058233527,
            1e-12
        ));
        assert!(close(
            report.capacity(Direction::TwoToOne, 1).unwrap(),
            0.5917595266004155,
            1e-12
        ));
    }

    #[test]
    fn symmetry_property_fails_on_unequal_active_capacities() {
        // Different noise in the two active states of one direction.
        let state = |t: f64| {
            TransitionMatrix::from_rows(&[
                &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
                &[2.0 / 3.0 - t, t, 1.0 / 3.0],
                &[t, 2.0 / 3.0 - t, 1.0 / 3.0],
            ])
            .unwrap()
        };
        let forward = crate::channel::MarginalFamily::new(
            Direction::OneToTwo,
            vec![state(0.0), state(0.05), state(0.2)],
        )
        .unwrap();
        let backward = crate::channel::MarginalFamily::new(
            Direction::TwoToOne,
            vec![state(0.0), state(0.0), state(0.0)],
        )
        .unwrap();
        let spec = TwcSpec::from_marginals("lopsided", forward, backward).unwrap();
        let report = check_symmetry_property(&spec).unwrap();
        assert!(!report.holds);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("1->2"));
        // Every state still gets its own capacity entry.
        assert!(report.capacity(Direction::OneToTwo, 2).is_some());
        // Downstream consumers refuse to run.
        assert!(matches!(corner_points(&spec), Err(Error::Unsupported(_))));
        assert!(capacity_region(&spec).is_err());
    }

    #[test]
    fn symmetry_check_requires_ptt_structure() {
        let m = TransitionMatrix::from_rows(&[&[0.5, 0.5], &[1.0, 0.0]]).unwrap();
        let fwd = crate::channel::MarginalFamily::new(Direction::OneToTwo, vec![m.clone(), m.clone()])
            .unwrap();
        let bwd =
            crate::channel::MarginalFamily::new(Direction::TwoToOne, vec![m.clone(), m]).unwrap();
        let spec = TwcSpec::from_marginals("binary", fwd, bwd).unwrap();
        assert!(matches!(check_symmetry_property(&spec), Err(Error::Structure(_))));
    }

    #[test]
    fn shannon_corners() {
        let corners = corner_points(&shannon_ptt()).unwrap();
        let expected = [
            (0.0, 0.0),
            (0.0, 0.0),
            (1.0, 0.0),
            (0.0, 1.0),
            (0.0, 0.0),
            (0.0, 0.0),
        ];
        for (i, &(r1, r2)) in expected.iter().enumerate() {
            assert_eq!(corners.pair(i).r1, r1, "corner {i}");
            assert_eq!(corners.pair(i).r2, r2, "corner {i}");
        }
        // Inputs achieving the interesting corners.
        let (p1, p2) = corners.input(2);
        assert_eq!(p1, &ProbVec::uniform_on_nonzero(3));
        assert_eq!(p2, &ProbVec::delta(3, 0));
    }

    #[test]
    fn shannon_region_is_the_triangle() {
        let region = capacity_region(&shannon_ptt()).unwrap();
        assert_eq!(region.vertices().len(), 2);
        assert!(close(region.vertices()[0].r1, 0.0, 1e-12));
        assert!(close(region.vertices()[0].r2, 1.0, 1e-12));
        assert!(close(region.vertices()[1].r1, 1.0, 1e-12));
        assert!(close(region.vertices()[1].r2, 0.0, 1e-12));
        // Time sharing the two solo corners is exactly the boundary.
        assert!(region.contains(&RatePair::new(0.5, 0.5), 0.0));
        assert!(!region.contains(&RatePair::new(0.5 + 1e-6, 0.5), 1e-9));
    }

    #[test]
    fn ternary_corner_table() {
        // Noise parameters chosen so all four per-state capacities differ.
        let spec = table2(0.1, 0.0, 0.2, 0.05).unwrap();
        let corners = corner_points(&spec).unwrap();
        let c = |t: f64| {
            let row = ProbVec::new(vec![2.0 / 3.0 - t, t, 1.0 / 3.0]).unwrap();
            3f64.log2() - crate::prob::entropy(&row)
        };
        assert!(close(corners.pair(1).r1, c(0.0), 1e-12));
        assert!(close(corners.pair(1).r2, c(0.05), 1e-12));
        assert!(close(corners.pair(2).r1, c(0.1), 1e-12));
        assert!(close(corners.pair(3).r2, c(0.2), 1e-12));
        assert!(close(corners.pair(4).r1, c(0.0), 1e-12));
        assert!(close(corners.pair(5).r2, c(0.05), 1e-12));
    }

    #[test]
    fn min_corner_variant_never_grows_the_region() {
        for (a, b, c, d) in [
            (0.0, 0.15, 0.0, 0.15),
            (0.0, 0.05, 0.0, 0.01),
            (0.1, 0.0, 0.0, 0.01),
            (0.1, 0.0, 0.2, 0.05),
        ] {
            let spec = table2(a, b, c, d).unwrap();
            let full = capacity_region(&spec).unwrap();
            let min = capacity_region_min_corners(&spec).unwrap();
            for v in min.vertices() {
                assert!(full.contains(v, 1e-9), "({a},{b},{c},{d}): {v} escaped");
            }
        }
    }

    #[test]
    fn min_corner_variant_differs_when_jamming_beats_idling() {
        // b > a = 0: talking through jamming is worse than talking to an idle
        // listener, so the min variant truncates the R1 axis reach.
        let spec = table2(0.0, 0.15, 0.0, 0.15).unwrap();
        let full = capacity_region(&spec).unwrap();
        let min = capacity_region_min_corners(&spec).unwrap();
        assert!(close(full.max_r1(), 2.0 / 3.0, 1e-12));
        assert!(close(min.max_r1(), 0.1538714473246575, 1e-12));
        assert!(full.max_r1() > min.max_r1() + 0.4);
    }

    #[test]
    fn domination_weights_partition_the_mass() {
        let spec = table2(0.0, 0.05, 0.0, 0.01).unwrap();
        let p1 = ProbVec::new(vec![0.2, 0.5, 0.3]).unwrap();
        let p2 = ProbVec::new(vec![0.4, 0.1, 0.5]).unwrap();
        let joint = JointInput::from_product(&p1, &p2);
        let (bound, weights) = domination_decomposition(&spec, &joint).unwrap();
        assert!(close(weights.iter().sum::<f64>(), 1.0, 1e-12));
        assert!(close(weights[0], 0.2 * 0.4, 1e-12));
        assert!(close(weights[1], 0.8 * 0.6, 1e-12));
        assert!(close(weights[2], 0.8 * 0.4, 1e-12));
        assert!(close(weights[3], 0.2 * 0.6, 1e-12));
        // Bound assembled from the capacity table.
        let c_fwd_active = 0.41045897058233527;
        let c_bwd_active = 0.5917595266004155;
        assert!(close(bound.r1, weights[1] * c_fwd_active + weights[2] * (2.0 / 3.0), 1e-12));
        assert!(close(bound.r2, weights[1] * c_bwd_active + weights[3] * (2.0 / 3.0), 1e-12));
    }

    #[test]
    fn domination_rejects_mismatched_joints() {
        let spec = shannon_ptt();
        let joint = JointInput::new(vec![0.25; 4], 2, 2).unwrap();
        assert!(domination_decomposition(&spec, &joint).is_err());
    }
}
