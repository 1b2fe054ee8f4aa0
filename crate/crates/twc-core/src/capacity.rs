//! One-way capacity computations: weak-symmetry detection, the closed form
//! for idle-row channels with weakly symmetric active rows, a KKT optimality
//! check, the Blahut-Arimoto solver with a convergence certificate, and the
//! per-state rate-loss bound.

use crate::channel::{TransitionMatrix, STRUCTURE_TOLERANCE};
use crate::error::{Error, Result};
use crate::prob::{
    entropy, mutual_information, per_symbol_mutual_information, ProbVec,
};

/// Default duality-gap tolerance for [`blahut_arimoto`].
pub const BA_DEFAULT_TOLERANCE: f64 = 1e-9;

/// Default iteration budget for [`blahut_arimoto`].
pub const BA_DEFAULT_MAX_ITER: u32 = 10_000;

/// How a capacity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityMethod {
    /// Closed form for uniform-idle-row channels with weakly symmetric
    /// active rows.
    ClosedForm,
    /// Iterative Blahut-Arimoto maximization.
    BlahutArimoto,
}

/// A capacity value together with the input achieving it and, for iterative
/// solves, the certified duality gap.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    /// Capacity in bits per use.
    pub capacity: f64,
    /// An input distribution achieving (or, for iterative solves,
    /// approaching) the capacity.
    pub optimal_input: ProbVec,
    /// How the value was computed.
    pub method: CapacityMethod,
    /// Iterations performed; 0 for the closed form.
    pub iterations: u32,
    /// Certified upper bound on `C - capacity`; 0 for the closed form.
    pub gap_bound: f64,
}

/// True when the matrix is weakly symmetric: every row is a permutation of
/// the first row and all column sums are equal, both within
/// [`STRUCTURE_TOLERANCE`].
pub fn is_weakly_symmetric(m: &TransitionMatrix) -> bool {
    let (r, s) = (m.input_size(), m.output_size());

    let mut column_sums = vec![0.0; s];
    for x in 0..r {
        for y in 0..s {
            column_sums[y] += m.prob(x, y);
        }
    }
    let max = column_sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = column_sums.iter().cloned().fold(f64::INFINITY, f64::min);
    if max - min > STRUCTURE_TOLERANCE {
        return false;
    }

    let sorted = |x: usize| -> Vec<f64> {
        let mut row = m.row(x).masses().to_vec();
        row.sort_by(|a, b| a.partial_cmp(b).expect("probabilities are comparable"));
        row
    };
    let reference = sorted(0);
    for x in 1..r {
        let row = sorted(x);
        if row
            .iter()
            .zip(&reference)
            .any(|(a, b)| (a - b).abs() > STRUCTURE_TOLERANCE)
        {
            return false;
        }
    }
    true
}

/// Closed-form capacity of a state matrix whose idle row (input 0) is uniform
/// and whose remaining rows form a weakly symmetric matrix:
/// `C = log2(outputs) - H(active row)`, achieved by the input uniform on the
/// nonzero symbols.
///
/// Fails with a structure error when either precondition does not hold.
pub fn closed_form_capacity(state_matrix: &TransitionMatrix) -> Result<CapacityResult> {
    let (r, s) = (state_matrix.input_size(), state_matrix.output_size());
    if r < 2 {
        return Err(Error::InvalidArgument(
            "state matrix needs an idle row and at least one active row".into(),
        ));
    }
    let uniform = 1.0 / s as f64;
    for (y, &p) in state_matrix.row(0).masses().iter().enumerate() {
        if (p - uniform).abs() > STRUCTURE_TOLERANCE {
            return Err(Error::Structure(format!(
                "idle row is not uniform: entry for output {y} is {p}, expected {uniform}"
            )));
        }
    }
    let active = state_matrix.nonzero_rows()?;
    if !is_weakly_symmetric(&active) {
        return Err(Error::Structure(
            "active rows (inputs 1, ...) do not form a weakly symmetric matrix".into(),
        ));
    }
    let capacity = ((s as f64).log2() - entropy(state_matrix.row(1))).max(0.0);
    Ok(CapacityResult {
        capacity,
        optimal_input: ProbVec::uniform_on_nonzero(r),
        method: CapacityMethod::ClosedForm,
        iterations: 0,
        gap_bound: 0.0,
    })
}

/// Outcome of a KKT optimality check for a candidate input distribution.
#[derive(Debug, Clone)]
pub struct KktReport {
    /// Information density `I(X=x; Y)` for every input symbol.
    pub per_symbol: Vec<f64>,
    /// The common density attained on the candidate's support.
    pub common_value: f64,
    /// Tolerance the check was run with.
    pub tolerance: f64,
    /// True when the candidate satisfies the optimality conditions.
    pub passed: bool,
}

/// Checks the capacity optimality conditions for `candidate` on `channel`:
/// every symbol in the candidate's support must attain a common information
/// density `C` (within `tolerance`) and every off-support symbol must attain
/// at most `C + tolerance`.
pub fn kkt_verify(
    channel: &TransitionMatrix,
    candidate: &ProbVec,
    tolerance: f64,
) -> Result<KktReport> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let per_symbol = (0..channel.input_size())
        .map(|x| per_symbol_mutual_information(candidate, channel, x))
        .collect::<Result<Vec<f64>>>()?;

    let mut support_max = f64::NEG_INFINITY;
    let mut support_min = f64::INFINITY;
    for (x, &d) in per_symbol.iter().enumerate() {
        if candidate.mass(x) > 0.0 {
            support_max = support_max.max(d);
            support_min = support_min.min(d);
        }
    }
    // A valid ProbVec always has support, so the fold found at least one value.
    let common_value = support_max;
    let support_flat = support_max - support_min <= tolerance;
    let off_support_ok = per_symbol
        .iter()
        .enumerate()
        .filter(|(x, _)| candidate.mass(*x) <= 0.0)
        .all(|(_, &d)| d <= common_value + tolerance);

    Ok(KktReport {
        per_symbol,
        common_value,
        tolerance,
        passed: support_flat && off_support_ok,
    })
}

/// Blahut-Arimoto capacity iteration with a duality-gap certificate.
///
/// Starting from the uniform input, each pass computes the per-symbol
/// densities `D(x)` against the current output distribution; their average is
/// a lower bound on capacity and their maximum an upper bound. The iteration
/// stops once `max - avg <= tolerance` or after `max_iter` passes; the result
/// always reports the last certified gap, so a non-converged run is returned
/// (with `gap_bound > tolerance`) rather than treated as an error.
///
/// Fails when `tolerance` is not positive or some output symbol is
/// unreachable from every input (its density terms would be unbounded).
pub fn blahut_arimoto(
    channel: &TransitionMatrix,
    tolerance: f64,
    max_iter: u32,
) -> Result<CapacityResult> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let (r, s) = (channel.input_size(), channel.output_size());
    for y in 0..s {
        if (0..r).all(|x| channel.prob(x, y) <= 0.0) {
            return Err(Error::Structure(format!(
                "output symbol {y} is unreachable from every input"
            )));
        }
    }

    let mut p = vec![1.0 / r as f64; r];
    let mut density = vec![0.0; r];
    let mut iterations = 0;
    let mut lower = 0.0;
    let mut gap = f64::INFINITY;

    while iterations < max_iter {
        iterations += 1;

        let mut output = vec![0.0; s];
        for x in 0..r {
            for y in 0..s {
                output[y] += p[x] * channel.prob(x, y);
            }
        }
        for x in 0..r {
            let mut d = 0.0;
            for y in 0..s {
                let pyx = channel.prob(x, y);
                if pyx > 0.0 {
                    // output[y] > 0 because p keeps full support under the
                    // multiplicative update.
                    d += pyx * (pyx / output[y]).log2();
                }
            }
            density[x] = d;
        }

        lower = (0..r).map(|x| p[x] * density[x]).sum();
        let upper = density.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        gap = upper - lower;
        if gap <= tolerance {
            break;
        }

        for x in 0..r {
            p[x] *= density[x].exp2();
        }
        let total: f64 = p.iter().sum();
        for mass in &mut p {
            *mass /= total;
        }
    }

    Ok(CapacityResult {
        capacity: lower.max(0.0),
        optimal_input: ProbVec::from_unnormalized(p),
        method: CapacityMethod::BlahutArimoto,
        iterations,
        gap_bound: gap.max(0.0),
    })
}

/// Evaluates both sides of the per-state rate-loss bound
/// `I(X; Y) <= (1 - p(0)) * C` for an input `p` on a closed-form state
/// matrix with capacity `C`, returning `(mutual_information, bound)`.
///
/// Fails when the matrix does not meet the closed-form preconditions or the
/// input does not match its alphabet.
pub fn rate_loss_bound(state_matrix: &TransitionMatrix, p: &ProbVec) -> Result<(f64, f64)> {
    let closed_form = closed_form_capacity(state_matrix)?;
    let information = mutual_information(p, state_matrix)?;
    let bound = (1.0 - p.mass(0)) * closed_form.capacity;
    Ok((information, bound))
}
