//! Command-line surface for the push-to-talk two-way-channel library.
//!
//! The binary (`twc`) wires argument parsing to [`run`]; everything else
//! lives here so integration tests can drive commands in-process and capture
//! their reports. See the crate of numeric kernels (`twc-core`) for the
//! underlying channel model, capacities, regions, and sweeps.

mod csv;
mod reproduce;
mod runner;

pub use csv::{export_csv, write_corners, write_rate_pairs, CsvTarget};
pub use reproduce::{
    reproduce_defaults, reproduce_into, SettingBundle, REPRODUCE_SETTINGS,
};
pub use runner::{
    run, BuiltinChannel, ChannelSource, Command, OutputFormat, RunConfig, DEFAULT_REPRODUCE_DIR,
};
