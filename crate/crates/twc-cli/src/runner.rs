//! Command dispatch: builds the channel, runs the requested computation, and
//! renders the report in the configured format.

use std::io::Write;
use std::path::{Path, PathBuf};

use twc_core::{
    blahut_arimoto, capacity_region, capacity_region_min_corners, check_symmetry_property,
    closed_form_capacity, compare_regions, corner_points, inner_bound_sweep, load_spec,
    outer_bound_sweep_with_cap, shannon_ptt, table2, validate_ptt_structure, Direction, Error,
    RateRegion, Result, SweepKind, TwcSpec, BA_DEFAULT_MAX_ITER,
    BA_DEFAULT_TOLERANCE, CONTAINMENT_SLACK, DEFAULT_ENUMERATION_CAP, DEFAULT_INNER_DENOMINATOR,
    DEFAULT_OUTER_DENOMINATOR, HULL_MERGE_TOLERANCE, PROB_SUM_TOLERANCE, STRUCTURE_TOLERANCE,
};

use crate::csv::{export_csv, io_error, write_rate_pairs, CsvTarget};
use crate::reproduce::reproduce_into;

/// Directory created by `reproduce` when none is configured.
pub const DEFAULT_REPRODUCE_DIR: &str = "twc-reproduce";

/// Appends one formatted line to a report buffer.
macro_rules! line {
    ($buf:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        writeln!($buf, $($arg)*).expect("writing to a String cannot fail");
    }};
}

/// Which computation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check alphabet sizes and idle-row uniformity.
    Validate,
    /// Check the channel symmetry property and print the capacity table.
    Symmetry,
    /// Print closed-form and iterative capacities per direction and state.
    Capacity,
    /// Compute the capacity region's Pareto chain and corners.
    Region,
    /// Sweep product input distributions (achievability).
    Inner,
    /// Sweep joint input distributions (converse).
    Outer,
    /// Compare the inner-sweep hull against the outer-sweep hull.
    Compare,
    /// Rebuild the CSV bundles for the four reference settings.
    Reproduce,
}

/// How to render the report on standard output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// Prose tables at four decimal places, with tolerances listed.
    Human,
    /// Comma-separated tables at six decimal places.
    Csv,
    /// Tab-separated tables at six decimal places.
    Tsv,
}

impl OutputFormat {
    /// The column separator, if this is a delimited format.
    fn delimiter(self) -> Option<char> {
        match self {
            OutputFormat::Human => None,
            OutputFormat::Csv => Some(','),
            OutputFormat::Tsv => Some('\t'),
        }
    }
}

/// A named built-in channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinChannel {
    /// The classical three-symbol push-to-talk channel.
    ShannonPtt,
    /// The parameterized ternary family with per-state noise levels.
    Table2 {
        /// Forward noise when the listener is idle.
        a: f64,
        /// Forward noise when the listener is active.
        b: f64,
        /// Backward noise when the listener is idle.
        c: f64,
        /// Backward noise when the listener is active.
        d: f64,
    },
}

/// Where the channel under study comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSource {
    /// A JSON spec file.
    File(PathBuf),
    /// A built-in builder.
    Builtin(BuiltinChannel),
}

/// Everything one invocation needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// The computation to run.
    pub command: Command,
    /// The channel to run it on; unused (and unneeded) for `Reproduce`.
    pub source: Option<ChannelSource>,
    /// Grid denominator for sweep commands; defaults depend on the command.
    pub grid_n: Option<u32>,
    /// Joint-enumeration cap for outer sweeps.
    pub enumeration_cap: Option<u64>,
    /// Where to write CSV files; commands print to stdout when absent.
    pub output_dir: Option<PathBuf>,
    /// Stdout rendering format.
    pub format: OutputFormat,
    /// Use the component-wise-minimum corner variant of the region.
    pub min_corners: bool,
}

/// Runs one configured command, writing the report to `out` and failure
/// diagnostics to `err`. Returns the process exit code: 0 on success, 1 when
/// validation or parsing fails, 2 on a resource error (enumeration cap, I/O).
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config) {
        Ok((report, code)) => {
            if let Err(source) = out.write_all(report.as_bytes()) {
                let _ = writeln!(err, "error: {}", io_error(Path::new("<stdout>"), source));
                return 2;
            }
            code
        }
        Err(error) => {
            let _ = writeln!(err, "error: {error}");
            exit_code_for(&error)
        }
    }
}

/// Exit code for a failed run.
fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::EnumerationCap { .. } | Error::Io { .. } => 2,
        _ => 1,
    }
}

/// Dispatches to the command implementation, producing the rendered report
/// and the exit code.
fn execute(config: &RunConfig) -> Result<(String, i32)> {
    if let Some(n) = config.grid_n {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid denominator must be at least 2, got {n}"
            )));
        }
    }
    if config.command == Command::Reproduce {
        return run_reproduce(config);
    }
    let spec = load_source(config)?;
    match config.command {
        Command::Validate => run_validate(&spec, config),
        Command::Symmetry => run_symmetry(&spec, config),
        Command::Capacity => run_capacity(&spec, config),
        Command::Region => run_region(&spec, config),
        Command::Inner => run_sweep(&spec, config, SweepKind::Inner),
        Command::Outer => run_sweep(&spec, config, SweepKind::Outer),
        Command::Compare => run_compare(&spec, config),
        Command::Reproduce => unreachable!("handled above"),
    }
}

/// Builds the channel named by the config.
fn load_source(config: &RunConfig) -> Result<TwcSpec> {
    match &config.source {
        None => Err(Error::InvalidArgument(
            "this command needs a channel: pass --input FILE or --builtin NAME".into(),
        )),
        Some(ChannelSource::File(path)) => load_spec(path),
        Some(ChannelSource::Builtin(BuiltinChannel::ShannonPtt)) => Ok(shannon_ptt()),
        Some(ChannelSource::Builtin(BuiltinChannel::Table2 { a, b, c, d })) => {
            table2(*a, *b, *c, *d)
        }
    }
}

/// The channel's display name, never empty.
fn display_name(spec: &TwcSpec) -> &str {
    if spec.name().is_empty() {
        "(unnamed)"
    } else {
        spec.name()
    }
}

/// `yes` / `no` for human tables.
fn yes_no(value: bool) -> &'static str {
    if value {
        "yes"
    } else {
        "no"
    }
}

/// The Pareto chain as one line of four-decimal pairs.
fn chain_line(region: &RateRegion) -> String {
    let pairs: Vec<String> = region.vertices().iter().map(|p| p.to_string()).collect();
    pairs.join(" ")
}

fn run_validate(spec: &TwcSpec, config: &RunConfig) -> Result<(String, i32)> {
    let report = validate_ptt_structure(spec);
    let mut buf = String::new();
    if let Some(d) = config.format.delimiter() {
        line!(buf, "check{d}result");
        line!(buf, "alphabets{d}{}", report.alphabets_ok);
        line!(buf, "idle_rows{d}{}", report.idle_rows_ok);
        line!(buf, "overall{d}{}", report.passed());
    } else {
        line!(buf, "channel: {}", display_name(spec));
        line!(
            buf,
            "alphabet sizes: r1={} r2={} s1={} s2={} -> {}",
            spec.r1(),
            spec.r2(),
            spec.s1(),
            spec.s2(),
            if report.alphabets_ok { "ok" } else { "too small" }
        );
        line!(buf, "idle rows uniform: {}", yes_no(report.idle_rows_ok));
        for violation in &report.violations {
            line!(buf, "  violation: {violation}");
        }
        line!(
            buf,
            "structure: {}",
            if report.passed() { "PASS" } else { "FAIL" }
        );
        line!(
            buf,
            "tolerances: idle-row deviation {STRUCTURE_TOLERANCE:e}, \
             probability sum {PROB_SUM_TOLERANCE:e}"
        );
    }
    Ok((buf, if report.passed() { 0 } else { 1 }))
}

fn run_symmetry(spec: &TwcSpec, config: &RunConfig) -> Result<(String, i32)> {
    let report = check_symmetry_property(spec)?;
    let mut buf = String::new();
    if let Some(d) = config.format.delimiter() {
        line!(buf, "direction{d}state{d}weakly_symmetric{d}capacity");
        for direction in &report.directions {
            for state in &direction.states {
                let capacity = state
                    .capacity
                    .map(|c| format!("{c:.6}"))
                    .unwrap_or_default();
                line!(
                    buf,
                    "{}{d}{}{d}{}{d}{capacity}",
                    direction.direction,
                    state.state,
                    state.weakly_symmetric
                );
            }
        }
    } else {
        line!(buf, "channel: {}", display_name(spec));
        line!(buf, "per-state capacity table:");
        line!(buf, "  direction  state  weakly-symmetric  capacity");
        for direction in &report.directions {
            for state in &direction.states {
                let capacity = state
                    .capacity
                    .map(|c| format!("{c:.4}"))
                    .unwrap_or_else(|| "-".into());
                line!(
                    buf,
                    "  {:<9}  {:<5}  {:<16}  {capacity}",
                    direction.direction.to_string(),
                    state.state,
                    yes_no(state.weakly_symmetric)
                );
            }
        }
        for violation in &report.violations {
            line!(buf, "  violation: {violation}");
        }
        line!(
            buf,
            "symmetry property: {}",
            if report.holds { "HOLDS" } else { "FAILS" }
        );
        line!(
            buf,
            "tolerances: weak symmetry and capacity equality {STRUCTURE_TOLERANCE:e}"
        );
    }
    Ok((buf, if report.holds { 0 } else { 1 }))
}

fn run_capacity(spec: &TwcSpec, config: &RunConfig) -> Result<(String, i32)> {
    let mut rows = Vec::new();
    for direction in [Direction::OneToTwo, Direction::TwoToOne] {
        let family = spec.family(direction);
        for state in 0..family.num_states() {
            let matrix = family.state(state);
            let closed = closed_form_capacity(matrix).ok();
            let iterative = blahut_arimoto(matrix, BA_DEFAULT_TOLERANCE, BA_DEFAULT_MAX_ITER)?;
            rows.push((direction, state, closed, iterative));
        }
    }
    let mut buf = String::new();
    if let Some(d) = config.format.delimiter() {
        line!(
            buf,
            "direction{d}state{d}closed_form{d}iterative{d}iterations{d}gap_bound"
        );
        for (direction, state, closed, iterative) in &rows {
            let closed = closed
                .as_ref()
                .map(|r| format!("{:.6}", r.capacity))
                .unwrap_or_default();
            line!(
                buf,
                "{direction}{d}{state}{d}{closed}{d}{:.6}{d}{}{d}{:.3e}",
                iterative.capacity,
                iterative.iterations,
                iterative.gap_bound
            );
        }
    } else {
        line!(buf, "channel: {}", display_name(spec));
        line!(buf, "per-state capacities (bits per use):");
        line!(buf, "  direction  state  closed-form  iterative  iterations  gap-bound");
        let mut closed_form_missing = false;
        for (direction, state, closed, iterative) in &rows {
            let closed = match closed {
                Some(r) => format!("{:.4}", r.capacity),
                None => {
                    closed_form_missing = true;
                    "-".into()
                }
            };
            line!(
                buf,
                "  {:<9}  {:<5}  {closed:<11}  {:<9.4}  {:<10}  {:.3e}",
                direction.to_string(),
                state,
                iterative.capacity,
                iterative.iterations,
                iterative.gap_bound
            );
        }
        if closed_form_missing {
            line!(
                buf,
                "note: '-' marks states without the uniform-idle-row, \
                 weakly-symmetric structure the closed form needs"
            );
        }
        line!(
            buf,
            "tolerances: iterative duality gap {BA_DEFAULT_TOLERANCE:e}, \
             max iterations {BA_DEFAULT_MAX_ITER}"
        );
    }
    Ok((buf, 0))
}

fn run_region(spec: &TwcSpec, config: &RunConfig) -> Result<(String, i32)> {
    let corners = corner_points(spec)?;
    let region = if config.min_corners {
        capacity_region_min_corners(spec)?
    } else {
        capacity_region(spec)?
    };
    let mut buf = String::new();
    if let Some(d) = config.format.delimiter() {
        write_rate_pairs_string(&mut buf, &region, d);
    } else {
        line!(buf, "channel: {}", display_name(spec));
        line!(
            buf,
            "variant: {}",
            if config.min_corners {
                "component-wise-minimum corners"
            } else {
                "all-corner hull"
            }
        );
        line!(buf, "corners:");
        for (index, label) in twc_core::CornerSet::labels().iter().enumerate() {
            line!(
                buf,
                "  R{} {label:<11}  {}",
                index + 1,
                corners.pair(index)
            );
        }
        line!(buf, "pareto chain: {}", chain_line(&region));
        line!(buf, "max R1: {:.6}", region.max_r1());
        line!(buf, "max R2: {:.6}", region.max_r2());
        line!(buf, "tolerances: hull merge {HULL_MERGE_TOLERANCE:e}");
    }
    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir).map_err(|source| io_error(dir, source))?;
        let region_path = dir.join("region.csv");
        let corners_path = dir.join("corners.csv");
        export_csv(CsvTarget::Region(&region), &region_path)?;
        export_csv(CsvTarget::Corners(&corners), &corners_path)?;
        if config.format == OutputFormat::Human {
            line!(buf, "wrote {}", region_path.display());
            line!(buf, "wrote {}", corners_path.display());
        }
    }
    Ok((buf, 0))
}

/// Appends a delimited `R1,R2` table for the region chain to `buf`.
fn write_rate_pairs_string(buf: &mut String, region: &RateRegion, delimiter: char) {
    let mut bytes = Vec::new();
    write_rate_pairs(&mut bytes, region.vertices(), delimiter)
        .expect("writing to a Vec cannot fail");
    buf.push_str(&String::from_utf8(bytes).expect("rate tables are ASCII"));
}

fn run_sweep(spec: &TwcSpec, config: &RunConfig, kind: SweepKind) -> Result<(String, i32)> {
    let result = match kind {
        SweepKind::Inner => {
            let n = config.grid_n.unwrap_or(DEFAULT_INNER_DENOMINATOR);
            inner_bound_sweep(spec, n)?
        }
        SweepKind::Outer => {
            let n = config.grid_n.unwrap_or(DEFAULT_OUTER_DENOMINATOR);
            let cap = config.enumeration_cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
            outer_bound_sweep_with_cap(spec, n, cap)?
        }
    };
    let mut buf = String::new();
    if let Some(d) = config.format.delimiter() {
        line!(buf, "section{d}R1{d}R2");
        for point in &result.points {
            line!(buf, "point{d}{:.6}{d}{:.6}", point.r1, point.r2);
        }
        for vertex in result.hull.vertices() {
            line!(buf, "hull{d}{:.6}{d}{:.6}", vertex.r1, vertex.r2);
        }
    } else {
        line!(buf, "channel: {}", display_name(spec));
        line!(
            buf,
            "{kind} sweep: denominator {}, {} rate pairs",
            result.grid_denominator,
            result.points.len()
        );
        line!(buf, "hull: {}", chain_line(&result.hull));
        line!(buf, "max R1: {:.6}", result.hull.max_r1());
        line!(buf, "max R2: {:.6}", result.hull.max_r2());
        line!(buf, "tolerances: hull merge {HULL_MERGE_TOLERANCE:e}");
    }
    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir).map_err(|source| io_error(dir, source))?;
        let points_path = dir.join(format!("{kind}_points.csv"));
        let hull_path = dir.join(format!("{kind}_hull.csv"));
        export_csv(CsvTarget::Sweep(&result), &points_path)?;
        export_csv(CsvTarget::Region(&result.hull), &hull_path)?;
        if config.format == OutputFormat::Human {
            line!(buf, "wrote {}", points_path.display());
            line!(buf, "wrote {}", hull_path.display());
        }
    }
    Ok((buf, 0))
}

fn run_compare(spec: &TwcSpec, config: &RunConfig) -> Result<(String, i32)> {
    let inner_n = config.grid_n.unwrap_or(DEFAULT_INNER_DENOMINATOR);
    let cap = config.enumeration_cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let inner = inner_bound_sweep(spec, inner_n)?;
    let outer = outer_bound_sweep_with_cap(spec, DEFAULT_OUTER_DENOMINATOR, cap)?;
    let report = compare_regions(&inner.hull, &outer.hull);
    let mut buf = String::new();
    if let Some(d) = config.format.delimiter() {
        line!(buf, "metric{d}value");
        line!(buf, "inner_in_outer{d}{}", report.first_in_second);
        line!(buf, "outer_in_inner{d}{}", report.second_in_first);
        line!(
            buf,
            "hausdorff_inner_to_outer{d}{:.6}",
            report.hausdorff_first_to_second
        );
        line!(
            buf,
            "hausdorff_outer_to_inner{d}{:.6}",
            report.hausdorff_second_to_first
        );
        line!(buf, "hausdorff{d}{:.6}", report.hausdorff());
    } else {
        line!(buf, "channel: {}", display_name(spec));
        line!(
            buf,
            "inner sweep: denominator {}, {} rate pairs",
            inner.grid_denominator,
            inner.points.len()
        );
        line!(
            buf,
            "outer sweep: denominator {}, {} joint inputs",
            outer.grid_denominator,
            outer.points.len()
        );
        line!(
            buf,
            "inner hull within outer hull: {}",
            yes_no(report.first_in_second)
        );
        line!(
            buf,
            "outer hull within inner hull: {}",
            yes_no(report.second_in_first)
        );
        line!(
            buf,
            "directed hausdorff inner->outer: {:.6}",
            report.hausdorff_first_to_second
        );
        line!(
            buf,
            "directed hausdorff outer->inner: {:.6}",
            report.hausdorff_second_to_first
        );
        line!(buf, "hausdorff distance: {:.6}", report.hausdorff());
        line!(buf, "tolerances: containment slack {CONTAINMENT_SLACK:e}");
    }
    Ok((buf, 0))
}

fn run_reproduce(config: &RunConfig) -> Result<(String, i32)> {
    let root = config
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_REPRODUCE_DIR));
    let inner_n = config.grid_n.unwrap_or(DEFAULT_INNER_DENOMINATOR);
    let bundles = reproduce_into(&root, inner_n, DEFAULT_OUTER_DENOMINATOR)?;
    let mut buf = String::new();
    for bundle in &bundles {
        line!(
            buf,
            "setting {}: {} -> {} ({} rate pairs, {} chain vertices, \
             {} outer joints verified)",
            bundle.setting,
            bundle.channel_name,
            bundle.directory.display(),
            bundle.point_count,
            bundle.vertex_count,
            bundle.verified_joints
        );
    }
    line!(buf, "tolerances: containment slack {CONTAINMENT_SLACK:e}");
    Ok((buf, 0))
}
