//! Delimiter-separated export of rate pairs, region chains, and corner sets.
//!
//! Files are always comma-separated with a header row and six decimal places
//! per rate; the byte output is a pure function of the exported values, so
//! repeated exports overwrite with identical content.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use twc_core::{CornerSet, Error, RatePair, RateRegion, Result, SweepResult};

/// What an export writes: sweep points, a region's Pareto chain, or the
/// labeled corner set.
#[derive(Debug, Clone, Copy)]
pub enum CsvTarget<'a> {
    /// Every rate pair visited by a sweep, in grid order.
    Sweep(&'a SweepResult),
    /// The Pareto chain of a region, in chain order.
    Region(&'a RateRegion),
    /// All six corners with their `R1`..`R6` labels.
    Corners(&'a CornerSet),
}

/// Writes `target` to `path` as comma-separated text.
pub fn export_csv(target: CsvTarget<'_>, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| io_error(path, source))?;
    let mut out = BufWriter::new(file);
    let written = match target {
        CsvTarget::Sweep(sweep) => write_rate_pairs(&mut out, &sweep.points, ','),
        CsvTarget::Region(region) => write_rate_pairs(&mut out, region.vertices(), ','),
        CsvTarget::Corners(corners) => write_corners(&mut out, corners, ','),
    };
    written
        .and_then(|()| out.flush())
        .map_err(|source| io_error(path, source))
}

/// Writes the `R1,R2` table for a list of rate pairs.
pub fn write_rate_pairs(
    out: &mut dyn Write,
    pairs: &[RatePair],
    delimiter: char,
) -> std::io::Result<()> {
    writeln!(out, "R1{delimiter}R2")?;
    for pair in pairs {
        writeln!(out, "{:.6}{delimiter}{:.6}", pair.r1, pair.r2)?;
    }
    Ok(())
}

/// Writes the labeled `corner,R1,R2` table for a corner set.
pub fn write_corners(
    out: &mut dyn Write,
    corners: &CornerSet,
    delimiter: char,
) -> std::io::Result<()> {
    writeln!(out, "corner{delimiter}R1{delimiter}R2")?;
    for index in 0..corners.len() {
        let pair = corners.pair(index);
        writeln!(
            out,
            "R{}{delimiter}{:.6}{delimiter}{:.6}",
            index + 1,
            pair.r1,
            pair.r2
        )?;
    }
    Ok(())
}

/// Wraps an I/O failure with the path it occurred on.
pub(crate) fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}
