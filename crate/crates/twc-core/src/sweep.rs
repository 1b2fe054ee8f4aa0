//! Numerical inner and outer bound sweeps: the achievable rate pair of an
//! arbitrary joint input, exhaustive grid sweeps over product and joint
//! input distributions, and region comparison with containment verdicts and
//! directed Hausdorff distances.
//!
//! Sweeps evaluate grid points by rank through [`SimplexGrid::at`], so the
//! work splits across threads deterministically: results are collected in
//! rank order and are byte-stable for any worker count.

use rayon::prelude::*;

use crate::channel::TwcSpec;
use crate::error::{Error, Result};
use crate::prob::{mutual_information_slices, JointInput, ProbVec, SimplexGrid};
use crate::region::{convex_hull_2d, RatePair, RateRegion, CONTAINMENT_SLACK};

/// Default grid denominator for inner (product-input) sweeps.
pub const DEFAULT_INNER_DENOMINATOR: u32 = 24;

/// Default grid denominator for outer (joint-input) sweeps.
pub const DEFAULT_OUTER_DENOMINATOR: u32 = 8;

/// Default ceiling on the number of joint distributions an outer sweep may
/// enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Which bound a sweep evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Product inputs only: an inner (achievability) bound.
    Inner,
    /// All joint inputs on the grid: an outer bound.
    Outer,
}

impl std::fmt::Display for SweepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepKind::Inner => write!(f, "inner"),
            SweepKind::Outer => write!(f, "outer"),
        }
    }
}

/// All rate pairs visited by a sweep, plus their down-closed convex hull.
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// Which bound was swept.
    pub kind: SweepKind,
    /// Name of the channel the sweep ran on.
    pub channel_name: String,
    /// Grid denominator used.
    pub grid_denominator: u32,
    /// One rate pair per grid point, in grid (rank) order.
    pub points: Vec<RatePair>,
    /// Down-closed convex hull of `points`.
    pub hull: RateRegion,
}

/// The rate pair achieved by an arbitrary joint input distribution: each
/// direction's rate is the state-average of the sender's conditional mutual
/// information, `sum_x P(peer = x) I(sender; output | peer = x)`.
///
/// States with zero marginal probability contribute nothing.
pub fn rate_pair(spec: &TwcSpec, joint: &JointInput) -> Result<RatePair> {
    if joint.r1() != spec.r1() || joint.r2() != spec.r2() {
        return Err(Error::DimensionMismatch(format!(
            "joint input is {}x{} but the channel is {}x{}",
            joint.r1(),
            joint.r2(),
            spec.r1(),
            spec.r2()
        )));
    }

    let mut r1 = 0.0;
    let marginal2 = joint.marginal2();
    for x2 in 0..spec.r2() {
        if marginal2[x2] > 0.0 {
            let conditional = joint
                .conditional1_given(x2)
                .expect("positive marginal implies a conditional");
            r1 += marginal2[x2]
                * mutual_information_slices(&conditional, spec.forward().state(x2));
        }
    }

    let mut r2 = 0.0;
    let marginal1 = joint.marginal1();
    for x1 in 0..spec.r1() {
        if marginal1[x1] > 0.0 {
            let conditional = joint
                .conditional2_given(x1)
                .expect("positive marginal implies a conditional");
            r2 += marginal1[x1]
                * mutual_information_slices(&conditional, spec.backward().state(x1));
        }
    }

    Ok(RatePair::new(r1, r2))
}

/// Sweeps every product input `P_{X1} x P_{X2}` with both factors on the
/// rational grid of the given denominator, returning all achieved rate pairs
/// and their hull (an inner bound on the capacity region).
///
/// For a product input the conditionals collapse to the factors, so each
/// direction's rate is an average of per-factor mutual informations; those
/// are precomputed per grid point, making the sweep linear rather than
/// quadratic in grid size for the information-theoretic kernels.
pub fn inner_bound_sweep(spec: &TwcSpec, denominator: u32) -> Result<SweepResult> {
    if denominator < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid denominator must be at least 2, got {denominator}"
        )));
    }
    let grid1 = SimplexGrid::new(spec.r1(), denominator)?;
    let grid2 = SimplexGrid::new(spec.r2(), denominator)?;
    let points1: Vec<ProbVec> = grid1.iter().collect();
    let points2: Vec<ProbVec> = grid2.iter().collect();

    // Forward rate of p1 x p2 is sum_x2 p2(x2) I(p1; forward state x2), and
    // symmetrically for the backward rate: precompute both tables.
    let fwd_mi: Vec<Vec<f64>> = points1
        .par_iter()
        .map(|p1| {
            (0..spec.r2())
                .map(|x2| mutual_information_slices(p1.masses(), spec.forward().state(x2)))
                .collect()
        })
        .collect();
    let bwd_mi: Vec<Vec<f64>> = points2
        .par_iter()
        .map(|p2| {
            (0..spec.r1())
                .map(|x1| mutual_information_slices(p2.masses(), spec.backward().state(x1)))
                .collect()
        })
        .collect();

    let n2 = points2.len();
    let points: Vec<RatePair> = (0..points1.len() * n2)
        .into_par_iter()
        .map(|rank| {
            let (i, j) = (rank / n2, rank % n2);
            let p1 = &points1[i];
            let p2 = &points2[j];
            let r1: f64 = (0..spec.r2()).map(|x2| p2.mass(x2) * fwd_mi[i][x2]).sum();
            let r2: f64 = (0..spec.r1()).map(|x1| p1.mass(x1) * bwd_mi[j][x1]).sum();
            RatePair::new(r1, r2)
        })
        .collect();

    let hull = convex_hull_2d(&points)?;
    Ok(SweepResult {
        kind: SweepKind::Inner,
        channel_name: spec.name().to_string(),
        grid_denominator: denominator,
        points,
        hull,
    })
}

/// Sweeps every joint input on the rational grid of the given denominator
/// over the pair alphabet, with the default enumeration cap.
pub fn outer_bound_sweep(spec: &TwcSpec, denominator: u32) -> Result<SweepResult> {
    outer_bound_sweep_with_cap(spec, denominator, DEFAULT_ENUMERATION_CAP)
}

/// Sweeps every joint input on the rational grid of the given denominator,
/// returning all achieved rate pairs and their hull (an outer bound on the
/// region spanned by product inputs, since joint inputs are a superset).
///
/// Fails with a resource error when the grid holds more than `cap` joint
/// distributions.
pub fn outer_bound_sweep_with_cap(
    spec: &TwcSpec,
    denominator: u32,
    cap: u64,
) -> Result<SweepResult> {
    if denominator < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid denominator must be at least 2, got {denominator}"
        )));
    }
    let grid = SimplexGrid::new(spec.r1() * spec.r2(), denominator)?;
    let count = grid.count();
    if count > cap as u128 {
        return Err(Error::EnumerationCap { count, cap });
    }

    let points: Vec<RatePair> = (0..count as usize)
        .into_par_iter()
        .map(|rank| {
            let p = grid.at(rank as u128);
            let joint = JointInput::from_prob_vec(&p, spec.r1(), spec.r2())
                .expect("grid points are valid distributions");
            rate_pair(spec, &joint).expect("grid joints match the channel dimensions")
        })
        .collect();

    let hull = convex_hull_2d(&points)?;
    Ok(SweepResult {
        kind: SweepKind::Outer,
        channel_name: spec.name().to_string(),
        grid_denominator: denominator,
        points,
        hull,
    })
}

/// Verdicts and distances from comparing two regions.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// True when every vertex of the first region lies in the second
    /// (within [`CONTAINMENT_SLACK`]).
    pub first_in_second: bool,
    /// True when every vertex of the second region lies in the first.
    pub second_in_first: bool,
    /// `max_{v in first} dist(v, second)`: how far the first region sticks
    /// out of the second.
    pub hausdorff_first_to_second: f64,
    /// `max_{v in second} dist(v, first)`.
    pub hausdorff_second_to_first: f64,
}

impl ComparisonReport {
    /// The symmetric Hausdorff distance between the two regions.
    pub fn hausdorff(&self) -> f64 {
        self.hausdorff_first_to_second.max(self.hausdorff_second_to_first)
    }
}

fn point_segment_distance(p: RatePair, a: RatePair, b: RatePair) -> f64 {
    let (dx, dy) = (b.r1 - a.r1, b.r2 - a.r2);
    let len2 = dx * dx + dy * dy;
    let t = if len2 <= 0.0 {
        0.0
    } else {
        (((p.r1 - a.r1) * dx + (p.r2 - a.r2) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.r1 + t * dx, a.r2 + t * dy);
    ((p.r1 - cx).powi(2) + (p.r2 - cy).powi(2)).sqrt()
}

/// Euclidean distance from a point to a region (0 inside).
fn point_region_distance(p: RatePair, region: &RateRegion) -> f64 {
    if region.contains(&p, 0.0) {
        return 0.0;
    }
    let polygon = region.boundary_polygon();
    polygon
        .windows(2)
        .map(|edge| point_segment_distance(p, edge[0], edge[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Directed Hausdorff distance from `from` to `to`: the largest distance any
/// vertex of `from` must travel to reach `to`.
///
/// Both regions are convex with all extreme points on their Pareto chains,
/// so the maximum over vertices is the maximum over the whole region.
pub fn directed_hausdorff(from: &RateRegion, to: &RateRegion) -> f64 {
    from.vertices()
        .iter()
        .map(|&v| point_region_distance(v, to))
        .fold(0.0, f64::max)
}

/// Compares two regions: mutual containment verdicts (vertices within
/// [`CONTAINMENT_SLACK`]) and both directed Hausdorff distances.
pub fn compare_regions(first: &RateRegion, second: &RateRegion) -> ComparisonReport {
    ComparisonReport {
        first_in_second: first
            .vertices()
            .iter()
            .all(|v| second.contains(v, CONTAINMENT_SLACK)),
        second_in_first: second
            .vertices()
            .iter()
            .all(|v| first.contains(v, CONTAINMENT_SLACK)),
        hausdorff_first_to_second: directed_hausdorff(first, second),
        hausdorff_second_to_first: directed_hausdorff(second, first),
    }
}
