//! `twc`: capacity regions of push-to-talk two-way channels.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twc_cli::{BuiltinChannel, ChannelSource, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "twc",
    version,
    about = "Capacity regions of push-to-talk two-way channels",
    long_about = "Validates channel structure, checks the per-state symmetry \
                  property, computes closed-form and iterative capacities, \
                  builds the corner-point capacity region, and sweeps inner \
                  (product-input) and outer (joint-input) bounds over simplex \
                  grids. Set TWC_WORKERS to pin the worker-thread count."
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

/// A named built-in channel.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum BuiltinName {
    /// The classical three-symbol push-to-talk channel.
    #[value(name = "shannon-ptt")]
    ShannonPtt,
    /// The parameterized ternary family (`--a/--b/--c/--d` set the noise).
    Table2,
}

/// Stdout rendering format.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatName {
    /// Prose tables at four decimals, tolerances included.
    Human,
    /// Comma-separated tables at six decimals.
    Csv,
    /// Tab-separated tables at six decimals.
    Tsv,
}

/// Where the channel comes from.
#[derive(Args, Debug)]
struct SourceArgs {
    /// Load the channel from a JSON spec file.
    #[arg(long, value_name = "PATH", conflicts_with = "builtin")]
    input: Option<PathBuf>,

    /// Use a built-in channel instead of a file.
    #[arg(long, value_enum, value_name = "NAME")]
    builtin: Option<BuiltinName>,

    /// Ternary-family forward noise while the listener is idle.
    #[arg(long, value_name = "P", default_value_t = 0.0)]
    a: f64,

    /// Ternary-family forward noise while the listener is active.
    #[arg(long, value_name = "P", default_value_t = 0.0)]
    b: f64,

    /// Ternary-family backward noise while the listener is idle.
    #[arg(long, value_name = "P", default_value_t = 0.0)]
    c: f64,

    /// Ternary-family backward noise while the listener is active.
    #[arg(long, value_name = "P", default_value_t = 0.0)]
    d: f64,
}

impl SourceArgs {
    fn into_source(self) -> Option<ChannelSource> {
        match (self.input, self.builtin) {
            (Some(path), _) => Some(ChannelSource::File(path)),
            (None, Some(BuiltinName::ShannonPtt)) => {
                Some(ChannelSource::Builtin(BuiltinChannel::ShannonPtt))
            }
            (None, Some(BuiltinName::Table2)) => {
                Some(ChannelSource::Builtin(BuiltinChannel::Table2 {
                    a: self.a,
                    b: self.b,
                    c: self.c,
                    d: self.d,
                }))
            }
            (None, None) => None,
        }
    }
}

/// Where and how to emit results.
#[derive(Args, Debug)]
struct OutputArgs {
    /// Directory to write CSV files into (stdout only when omitted).
    #[arg(long, value_name = "DIR")]
    output_dir: Option<PathBuf>,

    /// Stdout rendering format.
    #[arg(long, value_enum, value_name = "FMT", default_value_t = FormatName::Human)]
    format: FormatName,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Check alphabet sizes and idle-row uniformity.
    Validate {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the per-state symmetry property and print the capacity table.
    Symmetry {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print closed-form and iterative capacities per direction and state.
    Capacity {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the capacity region: corners and Pareto chain.
    Region {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Build the component-wise-minimum corner variant instead.
        #[arg(long)]
        min_corners: bool,
    },
    /// Sweep product input distributions (achievable rate pairs).
    Inner {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Simplex-grid denominator (default 24).
        #[arg(long, value_name = "N")]
        grid_n: Option<u32>,
    },
    /// Sweep joint input distributions (outer-bound rate pairs).
    Outer {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Simplex-grid denominator (default 8).
        #[arg(long, value_name = "N")]
        grid_n: Option<u32>,
        /// Abort if the joint grid would exceed this many distributions.
        #[arg(long, value_name = "COUNT")]
        cap: Option<u64>,
    },
    /// Compare the inner-sweep hull against the outer-sweep hull.
    Compare {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Inner-sweep grid denominator (default 24).
        #[arg(long, value_name = "N")]
        grid_n: Option<u32>,
    },
    /// Rebuild the CSV bundles for the four reference settings.
    Reproduce {
        #[command(flatten)]
        output: OutputArgs,
        /// Inner-sweep grid denominator (default 24).
        #[arg(long, value_name = "N")]
        grid_n: Option<u32>,
    },
}

impl CliCommand {
    fn into_config(self) -> RunConfig {
        match self {
            CliCommand::Validate { source, output } => {
                base_config(Command::Validate, Some(source), output)
            }
            CliCommand::Symmetry { source, output } => {
                base_config(Command::Symmetry, Some(source), output)
            }
            CliCommand::Capacity { source, output } => {
                base_config(Command::Capacity, Some(source), output)
            }
            CliCommand::Region {
                source,
                output,
                min_corners,
            } => {
                let mut config = base_config(Command::Region, Some(source), output);
                config.min_corners = min_corners;
                config
            }
            CliCommand::Inner {
                source,
                output,
                grid_n,
            } => {
                let mut config = base_config(Command::Inner, Some(source), output);
                config.grid_n = grid_n;
                config
            }
            CliCommand::Outer {
                source,
                output,
                grid_n,
                cap,
            } => {
                let mut config = base_config(Command::Outer, Some(source), output);
                config.grid_n = grid_n;
                config.enumeration_cap = cap;
                config
            }
            CliCommand::Compare {
                source,
                output,
                grid_n,
            } => {
                let mut config = base_config(Command::Compare, Some(source), output);
                config.grid_n = grid_n;
                config
            }
            CliCommand::Reproduce { output, grid_n } => {
                let mut config = base_config(Command::Reproduce, None, output);
                config.grid_n = grid_n;
                config
            }
        }
    }
}

fn base_config(command: Command, source: Option<SourceArgs>, output: OutputArgs) -> RunConfig {
    RunConfig {
        command,
        source: source.and_then(SourceArgs::into_source),
        grid_n: None,
        enumeration_cap: None,
        output_dir: output.output_dir,
        format: match output.format {
            FormatName::Human => OutputFormat::Human,
            FormatName::Csv => OutputFormat::Csv,
            FormatName::Tsv => OutputFormat::Tsv,
        },
        min_corners: false,
    }
}

/// Applies `TWC_WORKERS` to the global worker pool; hardware parallelism
/// stays in effect when the variable is unset or invalid.
fn configure_workers() {
    let Ok(value) = std::env::var("TWC_WORKERS") else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(workers) if workers >= 1 => {
            if let Err(error) = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build_global()
            {
                eprintln!("warning: could not apply TWC_WORKERS={workers}: {error}");
            }
        }
        _ => eprintln!("warning: ignoring invalid TWC_WORKERS value {value:?}"),
    }
}

fn main() {
    let cli = Cli::parse();
    configure_workers();
    let config = cli.command.into_config();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = twc_cli::run(&config, &mut stdout, &mut stderr);
    std::process::exit(code);
}
