//! End-to-end reproduction of the four reference parameter settings.
//!
//! For each setting this builds the ternary-family channel, checks structure
//! and the symmetry property, computes the capacity region, runs the inner
//! and outer sweeps, verifies that every outer-sweep rate pair lies inside
//! the region, and writes one CSV bundle per setting:
//!
//! * `points.csv`  — every inner-sweep rate pair, in grid order;
//! * `hull.csv`    — the region's Pareto chain, in chain order;
//! * `corners.csv` — the six labeled corner points.
//!
//! All outputs are deterministic byte-for-byte, independent of the worker
//! count, because sweeps preserve grid order and every file is written from
//! already-ordered data.

use std::fs;
use std::path::{Path, PathBuf};

use twc_core::{
    capacity_region, check_symmetry_property, corner_points, inner_bound_sweep, outer_bound_sweep,
    table2, Error, Result, CONTAINMENT_SLACK, DEFAULT_INNER_DENOMINATOR,
    DEFAULT_OUTER_DENOMINATOR,
};

use crate::csv::{export_csv, io_error, CsvTarget};

/// The four `(a, b, c, d)` parameter bundles of the reference settings.
pub const REPRODUCE_SETTINGS: [(f64, f64, f64, f64); 4] = [
    (0.0, 0.15, 0.0, 0.15),
    (0.0, 0.05, 0.0, 0.01),
    (0.1, 0.0, 0.0, 0.01),
    (0.1, 0.0, 0.2, 0.05),
];

/// What one setting's reproduction produced.
#[derive(Debug, Clone)]
pub struct SettingBundle {
    /// One-based setting number.
    pub setting: usize,
    /// The channel's display name.
    pub channel_name: String,
    /// Directory holding the CSV bundle.
    pub directory: PathBuf,
    /// Number of inner-sweep rate pairs written to `points.csv`.
    pub point_count: usize,
    /// Number of Pareto-chain vertices written to `hull.csv`.
    pub vertex_count: usize,
    /// Number of outer-sweep joints verified against the region.
    pub verified_joints: usize,
}

/// Runs every reference setting and writes one CSV bundle per setting under
/// `root`, using the given grid denominators. Existing files are overwritten
/// in place, byte-identically when inputs are unchanged.
pub fn reproduce_into(root: &Path, inner_n: u32, outer_n: u32) -> Result<Vec<SettingBundle>> {
    let mut bundles = Vec::with_capacity(REPRODUCE_SETTINGS.len());
    for (index, &(a, b, c, d)) in REPRODUCE_SETTINGS.iter().enumerate() {
        let setting = index + 1;
        let spec = table2(a, b, c, d)?;
        let symmetry = check_symmetry_property(&spec)?;
        if !symmetry.holds {
            return Err(Error::Structure(format!(
                "setting {setting}: symmetry property unexpectedly fails: {}",
                symmetry.violations.join("; ")
            )));
        }
        let region = capacity_region(&spec)?;
        let corners = corner_points(&spec)?;
        let inner = inner_bound_sweep(&spec, inner_n)?;
        let outer = outer_bound_sweep(&spec, outer_n)?;
        for point in &outer.points {
            if !region.contains(point, CONTAINMENT_SLACK) {
                return Err(Error::Structure(format!(
                    "setting {setting}: outer-sweep rate pair {point} escapes the region"
                )));
            }
        }

        let directory = root.join(format!("setting-{setting}"));
        fs::create_dir_all(&directory).map_err(|source| io_error(&directory, source))?;
        export_csv(CsvTarget::Sweep(&inner), &directory.join("points.csv"))?;
        export_csv(CsvTarget::Region(&region), &directory.join("hull.csv"))?;
        export_csv(CsvTarget::Corners(&corners), &directory.join("corners.csv"))?;

        bundles.push(SettingBundle {
            setting,
            channel_name: spec.name().to_string(),
            directory,
            point_count: inner.points.len(),
            vertex_count: region.vertices().len(),
            verified_joints: outer.points.len(),
        });
    }
    Ok(bundles)
}

/// Runs [`reproduce_into`] with the default sweep denominators.
pub fn reproduce_defaults(root: &Path) -> Result<Vec<SettingBundle>> {
    reproduce_into(root, DEFAULT_INNER_DENOMINATOR, DEFAULT_OUTER_DENOMINATOR)
}
