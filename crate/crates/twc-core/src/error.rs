//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while building channels or computing bounds.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector failed probability-vector validation (negative mass, bad sum, ...).
    #[error("invalid probability vector: {0}")]
    InvalidProbVec(String),

    /// A precondition on a plain argument was violated (empty input, zero grid, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two objects that must share dimensions do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The information density I(X=x; Y) is undefined: some output has zero
    /// probability under the input distribution but positive conditional
    /// probability given x.
    #[error(
        "information density undefined for input symbol {input}: output {output} \
         has zero probability under the input distribution but P(y|x) = {prob}"
    )]
    UndefinedDensity { input: usize, output: usize, prob: f64 },

    /// A channel violated a structural requirement (non-uniform idle row,
    /// missing weak symmetry, unreachable output, ...).
    #[error("channel structure violation: {0}")]
    Structure(String),

    /// The requested operation needs a property this channel does not have.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A sweep would enumerate more joint distributions than the configured cap.
    #[error(
        "enumerating {count} joint distributions exceeds the cap of {cap}; \
         lower the grid denominator or raise the cap"
    )]
    EnumerationCap { count: u128, cap: u64 },

    /// A channel spec file could not be parsed.
    #[error("spec parse error: {0}")]
    Parse(String),

    /// Reading or writing a file failed.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
