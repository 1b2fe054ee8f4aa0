//! Probability vectors, entropy / mutual-information kernels, joint input
//! distributions over a pair of alphabets, and exhaustive rational grids on
//! the probability simplex.
//!
//! All logarithms are base 2, so every information quantity is in bits.
//! `0 log 0 = 0` throughout.

use num_integer::binomial;

use crate::channel::TransitionMatrix;
use crate::error::{Error, Result};

/// Tolerance on |sum - 1| accepted when validating a probability vector.
pub const PROB_SUM_TOLERANCE: f64 = 1e-12;

/// Looser sum tolerance used for joint distributions assembled from products
/// or marginalization, where reassociation error accumulates over many atoms.
pub const JOINT_SUM_TOLERANCE: f64 = 1e-9;

/// A validated probability distribution over a finite alphabet `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec {
    masses: Vec<f64>,
}

impl ProbVec {
    /// Validates and wraps a mass vector.
    ///
    /// Requires a nonempty vector with every entry in `[0, 1]` (NaN rejected)
    /// and total mass within [`PROB_SUM_TOLERANCE`] of 1.
    pub fn new(masses: Vec<f64>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidProbVec("mass vector is empty".into()));
        }
        for (i, &m) in masses.iter().enumerate() {
            if m < 0.0 || m.is_nan() {
                return Err(Error::InvalidProbVec(format!(
                    "entry {i} is {m}, which is negative or NaN"
                )));
            }
            if m > 1.0 + PROB_SUM_TOLERANCE {
                return Err(Error::InvalidProbVec(format!("entry {i} is {m} > 1")));
            }
        }
        let sum: f64 = masses.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
            return Err(Error::InvalidProbVec(format!(
                "total mass is {sum}, outside 1 +/- {PROB_SUM_TOLERANCE}"
            )));
        }
        Ok(Self { masses })
    }

    /// Wraps a nonnegative vector after dividing by its sum.
    ///
    /// Used internally where an algorithm produces masses that are normalized
    /// up to rounding (e.g. iterative capacity solvers).
    pub(crate) fn from_unnormalized(mut masses: Vec<f64>) -> Self {
        let sum: f64 = masses.iter().sum();
        debug_assert!(sum > 0.0, "cannot normalize the zero vector");
        for m in &mut masses {
            *m /= sum;
        }
        Self { masses }
    }

    /// The uniform distribution on `len` symbols.
    pub fn uniform(len: usize) -> Self {
        assert!(len > 0, "uniform distribution needs a nonempty alphabet");
        Self { masses: vec![1.0 / len as f64; len] }
    }

    /// The point mass on symbol `at` of an alphabet of size `len`.
    pub fn delta(len: usize, at: usize) -> Self {
        assert!(at < len, "delta position {at} out of range for alphabet {len}");
        let mut masses = vec![0.0; len];
        masses[at] = 1.0;
        Self { masses }
    }

    /// Zero mass on symbol 0, uniform mass on symbols `1, ..., len-1`.
    pub fn uniform_on_nonzero(len: usize) -> Self {
        assert!(len >= 2, "need at least one nonzero symbol");
        let mut masses = vec![1.0 / (len - 1) as f64; len];
        masses[0] = 0.0;
        Self { masses }
    }

    /// Alphabet size.
    pub fn len(&self) -> usize {
        self.masses.len()
    }

    /// True when the alphabet has no symbols (never holds for a valid vector).
    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Mass on symbol `i`.
    pub fn mass(&self, i: usize) -> f64 {
        self.masses[i]
    }

    /// The raw mass slice.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }
}

/// Shannon entropy in bits of a raw mass slice; entries `<= 0` contribute 0.
///
/// Accumulates the per-symbol terms `-p log2 p` directly so the result is a
/// sum of nonnegative terms (no `-0.0` artifacts).
pub(crate) fn entropy_slice(masses: &[f64]) -> f64 {
    let mut h = 0.0;
    for &p in masses {
        if p > 0.0 {
            h += -p * p.log2();
        }
    }
    h
}

/// Shannon entropy H(p) in bits.
pub fn entropy(p: &ProbVec) -> f64 {
    entropy_slice(p.masses())
}

/// Mutual information I(X; Y) in bits for raw slices, with no validation.
///
/// `input` must have `channel.input_size()` entries and sum to 1.
pub(crate) fn mutual_information_slices(input: &[f64], channel: &TransitionMatrix) -> f64 {
    let s = channel.output_size();
    let mut output = vec![0.0; s];
    let mut h_y_given_x = 0.0;
    for (x, &px) in input.iter().enumerate() {
        if px <= 0.0 {
            continue;
        }
        let row = channel.row(x).masses();
        for (y, &pyx) in row.iter().enumerate() {
            output[y] += px * pyx;
        }
        h_y_given_x += px * entropy_slice(row);
    }
    // The difference of two entropies can dip a few ulps below zero when the
    // output distribution is (numerically) independent of the input.
    (entropy_slice(&output) - h_y_given_x).max(0.0)
}

/// Mutual information I(X; Y) in bits between `input` and the output of
/// `channel` driven by it.
///
/// Fails when the input alphabet does not match the channel's input size.
pub fn mutual_information(input: &ProbVec, channel: &TransitionMatrix) -> Result<f64> {
    if input.len() != channel.input_size() {
        return Err(Error::DimensionMismatch(format!(
            "input distribution has {} symbols but the channel expects {}",
            input.len(),
            channel.input_size()
        )));
    }
    Ok(mutual_information_slices(input.masses(), channel))
}

/// Information density of a single input symbol:
/// `I(X=x; Y) = sum_y P(y|x) log2( P(y|x) / P_Y(y) )`,
/// with `P_Y` induced by `input` through `channel`.
///
/// Fails on a dimension mismatch, on `x` out of range, or when some output
/// has `P_Y(y) = 0` but `P(y|x) > 0` (the density is undefined there).
pub fn per_symbol_mutual_information(
    input: &ProbVec,
    channel: &TransitionMatrix,
    x: usize,
) -> Result<f64> {
    if input.len() != channel.input_size() {
        return Err(Error::DimensionMismatch(format!(
            "input distribution has {} symbols but the channel expects {}",
            input.len(),
            channel.input_size()
        )));
    }
    if x >= channel.input_size() {
        return Err(Error::InvalidArgument(format!(
            "input symbol {x} out of range for alphabet of size {}",
            channel.input_size()
        )));
    }
    let output = channel.output_distribution(input)?;
    let row = channel.row(x).masses();
    let mut density = 0.0;
    for (y, &pyx) in row.iter().enumerate() {
        if pyx > 0.0 {
            if output[y] <= 0.0 {
                return Err(Error::UndefinedDensity { input: x, output: y, prob: pyx });
            }
            density += pyx * (pyx / output[y]).log2();
        }
    }
    Ok(density)
}

/// A joint input distribution over the pair alphabet
/// `{0,...,r1-1} x {0,...,r2-1}`, stored row-major in the first coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct JointInput {
    masses: Vec<f64>,
    r1: usize,
    r2: usize,
}

impl JointInput {
    /// Validates and wraps a flat mass vector of length `r1 * r2`, indexed as
    /// `masses[x1 * r2 + x2]`.
    pub fn new(masses: Vec<f64>, r1: usize, r2: usize) -> Result<Self> {
        if r1 == 0 || r2 == 0 {
            return Err(Error::InvalidArgument("joint input alphabets must be nonempty".into()));
        }
        if masses.len() != r1 * r2 {
            return Err(Error::DimensionMismatch(format!(
                "joint input has {} atoms but {r1} x {r2} = {} were expected",
                masses.len(),
                r1 * r2
            )));
        }
        for (i, &m) in masses.iter().enumerate() {
            if m < 0.0 || m.is_nan() {
                return Err(Error::InvalidProbVec(format!(
                    "joint atom ({}, {}) has mass {m}, which is negative or NaN",
                    i / r2,
                    i % r2
                )));
            }
        }
        let sum: f64 = masses.iter().sum();
        if (sum - 1.0).abs() > JOINT_SUM_TOLERANCE {
            return Err(Error::InvalidProbVec(format!(
                "joint input total mass is {sum}, outside 1 +/- {JOINT_SUM_TOLERANCE}"
            )));
        }
        Ok(Self { masses, r1, r2 })
    }

    /// Reinterprets a flat distribution on `r1 * r2` symbols as a joint input.
    pub fn from_prob_vec(p: &ProbVec, r1: usize, r2: usize) -> Result<Self> {
        Self::new(p.masses().to_vec(), r1, r2)
    }

    /// The product distribution `p1 x p2`.
    pub fn from_product(p1: &ProbVec, p2: &ProbVec) -> Self {
        let mut masses = Vec::with_capacity(p1.len() * p2.len());
        for &a in p1.masses() {
            for &b in p2.masses() {
                masses.push(a * b);
            }
        }
        Self { masses, r1: p1.len(), r2: p2.len() }
    }

    /// First alphabet size.
    pub fn r1(&self) -> usize {
        self.r1
    }

    /// Second alphabet size.
    pub fn r2(&self) -> usize {
        self.r2
    }

    /// Mass on the atom `(x1, x2)`.
    pub fn mass(&self, x1: usize, x2: usize) -> f64 {
        self.masses[x1 * self.r2 + x2]
    }

    /// Marginal distribution of the first coordinate (raw masses).
    pub fn marginal1(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.r1];
        for x1 in 0..self.r1 {
            for x2 in 0..self.r2 {
                m[x1] += self.mass(x1, x2);
            }
        }
        m
    }

    /// Marginal distribution of the second coordinate (raw masses).
    pub fn marginal2(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.r2];
        for x1 in 0..self.r1 {
            for x2 in 0..self.r2 {
                m[x2] += self.mass(x1, x2);
            }
        }
        m
    }

    /// Conditional distribution of the first coordinate given `x2`, or `None`
    /// when the conditioning symbol has zero marginal mass.
    pub fn conditional1_given(&self, x2: usize) -> Option<Vec<f64>> {
        let total: f64 = (0..self.r1).map(|x1| self.mass(x1, x2)).sum();
        if total <= 0.0 {
            return None;
        }
        Some((0..self.r1).map(|x1| self.mass(x1, x2) / total).collect())
    }

    /// Conditional distribution of the second coordinate given `x1`, or `None`
    /// when the conditioning symbol has zero marginal mass.
    pub fn conditional2_given(&self, x1: usize) -> Option<Vec<f64>> {
        let total: f64 = (0..self.r2).map(|x2| self.mass(x1, x2)).sum();
        if total <= 0.0 {
            return None;
        }
        Some((0..self.r2).map(|x2| self.mass(x1, x2) / total).collect())
    }
}

/// The set of rational points `k / denominator` (componentwise, `k` an integer
/// composition) on the probability simplex of a given dimension.
///
/// Points are ordered ascending-lexicographically by their integer numerator
/// tuples, and can be both enumerated and addressed by rank, so large grids
/// chunk deterministically across worker threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplexGrid {
    dimension: usize,
    denominator: u32,
}

impl SimplexGrid {
    /// Grid over `dimension` symbols with the given denominator.
    pub fn new(dimension: usize, denominator: u32) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("simplex dimension must be at least 1".into()));
        }
        if denominator == 0 {
            return Err(Error::InvalidArgument("grid denominator must be at least 1".into()));
        }
        Ok(Self { dimension, denominator })
    }

    /// Alphabet size the grid points live on.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Common denominator of all grid point coordinates.
    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    /// Number of grid points: `C(denominator + dimension - 1, dimension - 1)`.
    pub fn count(&self) -> u128 {
        let n = self.denominator as u128;
        let m = self.dimension as u128;
        binomial(n + m - 1, m - 1)
    }

    /// The grid point of the given rank in ascending lexicographic order.
    ///
    /// Panics if `rank >= count()`.
    pub fn at(&self, rank: u128) -> ProbVec {
        assert!(rank < self.count(), "grid rank {rank} out of range");
        let m = self.dimension;
        let mut numerators = vec![0u32; m];
        let mut remaining_mass = self.denominator as u128;
        let mut remaining_rank = rank;
        for pos in 0..m - 1 {
            // Parts strictly to the right of `pos`, minus the forced last part.
            let free_parts = (m - pos - 2) as u128;
            for k in 0..=remaining_mass {
                let block = binomial(remaining_mass - k + free_parts, free_parts);
                if remaining_rank < block {
                    numerators[pos] = k as u32;
                    remaining_mass -= k;
                    break;
                }
                remaining_rank -= block;
            }
        }
        numerators[m - 1] = remaining_mass as u32;
        self.point(&numerators)
    }

    /// Iterator over all grid points in ascending lexicographic order.
    pub fn iter(&self) -> SimplexGridIter {
        let mut first = vec![0u32; self.dimension];
        first[self.dimension - 1] = self.denominator;
        SimplexGridIter { grid: *self, next: Some(first) }
    }

    /// True when every coordinate of `p` is within `tol` of a multiple of
    /// `1 / denominator` and the rounded numerators sum to the denominator.
    pub fn contains(&self, p: &ProbVec, tol: f64) -> bool {
        if p.len() != self.dimension {
            return false;
        }
        let n = self.denominator as f64;
        let mut total = 0u64;
        for &mass in p.masses() {
            let k = (mass * n).round();
            if (mass - k / n).abs() > tol {
                return false;
            }
            total += k as u64;
        }
        total == self.denominator as u64
    }

    fn point(&self, numerators: &[u32]) -> ProbVec {
        let n = self.denominator as f64;
        ProbVec {
            masses: numerators.iter().map(|&k| k as f64 / n).collect(),
        }
    }
}

/// Iterator produced by [`SimplexGrid::iter`].
#[derive(Debug, Clone)]
pub struct SimplexGridIter {
    grid: SimplexGrid,
    next: Option<Vec<u32>>,
}

impl Iterator for SimplexGridIter {
    type Item = ProbVec;

    fn next(&mut self) -> Option<ProbVec> {
        let current = self.next.take()?;
        let point = self.grid.point(&current);
        self.next = successor(current);
        Some(point)
    }
}

/// Ascending-lexicographic successor of an integer composition, or `None`
/// after the last composition `(n, 0, ..., 0)`.
fn successor(mut k: Vec<u32>) -> Option<Vec<u32>> {
    let m = k.len();
    // Find the rightmost position (excluding the last) with mass to its right.
    let mut tail: u64 = k[m - 1] as u64;
    let mut pivot = None;
    for j in (0..m - 1).rev() {
        if tail > 0 {
            pivot = Some(j);
            break;
        }
        tail += k[j] as u64;
    }
    let j = pivot?;
    // Move one unit onto the pivot and push the rest of the tail to the end.
    let carried: u64 = k[j + 1..].iter().map(|&v| v as u64).sum();
    k[j] += 1;
    for v in &mut k[j + 1..] {
        *v = 0;
    }
    k[m - 1] = (carried - 1) as u32;
    Some(k)
}
