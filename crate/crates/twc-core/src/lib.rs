//! Capacity regions of generalized push-to-talk two-way channels.
//!
//! A push-to-talk two-way channel couples two users who each either idle
//! (symbol 0) or talk (a nonzero symbol); a user who idles hears the other
//! cleanly, while a user who talks perturbs — or severs — the reverse link.
//! This crate models such channels (by their joint transition law, their two
//! per-state marginal families, or both), decides whether the channel
//! symmetry property holds, and for symmetric channels computes:
//!
//! - closed-form one-way capacities per direction and state, with KKT
//!   verification and a Blahut-Arimoto cross-check ([`capacity`]);
//! - the six extreme operating points and the exact capacity region they
//!   span, as a down-closed convex Pareto chain ([`region`]);
//! - exhaustive inner (product-input) and outer (joint-input) bound sweeps
//!   over rational grids, with containment verdicts and Hausdorff distances
//!   quantifying how tightly the bounds sandwich the region ([`sweep`]).
//!
//! Channels can be read from and written to a JSON spec format ([`format`]),
//! and two reference families ship built in: [`channel::shannon_ptt`] and
//! the four-parameter ternary family [`channel::table2`].
//!
//! All rates and entropies are in bits. Every sweep is deterministic: results
//! are identical, byte for byte, for any number of worker threads.

// The numeric kernels index matrices and tensors by symbol on purpose; the
// iterator rewrites clippy suggests obscure which alphabet each loop walks.
#![allow(clippy::needless_range_loop)]

pub mod capacity;
pub mod channel;
pub mod error;
pub mod format;
pub mod prob;
pub mod region;
pub mod sweep;

pub use capacity::{
    blahut_arimoto, closed_form_capacity, is_weakly_symmetric, kkt_verify, rate_loss_bound,
    CapacityMethod, CapacityResult, KktReport, BA_DEFAULT_MAX_ITER, BA_DEFAULT_TOLERANCE,
};
pub use channel::{
    shannon_ptt, table2, validate_ptt_structure, Direction, JointTensor, MarginalFamily,
    StructureReport, TransitionMatrix, TwcSpec, STRUCTURE_TOLERANCE, TABLE2_PARAM_MAX,
};
pub use error::{Error, Result};
pub use format::{load_spec, parse_spec, save_spec, spec_to_json};
pub use prob::{
    entropy, mutual_information, per_symbol_mutual_information, JointInput, ProbVec, SimplexGrid,
    JOINT_SUM_TOLERANCE, PROB_SUM_TOLERANCE,
};
pub use region::{
    capacity_region, capacity_region_min_corners, check_symmetry_property, convex_hull_2d,
    corner_points, domination_decomposition, CornerSet, DirectionSymmetry, RatePair, RateRegion,
    StateSymmetry, SymmetryReport, CONTAINMENT_SLACK, HULL_MERGE_TOLERANCE,
};
pub use sweep::{
    compare_regions, directed_hausdorff, inner_bound_sweep, outer_bound_sweep,
    outer_bound_sweep_with_cap, rate_pair, ComparisonReport, SweepKind, SweepResult,
    DEFAULT_ENUMERATION_CAP, DEFAULT_INNER_DENOMINATOR, DEFAULT_OUTER_DENOMINATOR,
};
