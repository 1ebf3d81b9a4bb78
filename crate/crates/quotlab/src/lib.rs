//! File formats, reproducible task seeding, checkpointed parallel point
//! counts and the `quotlab` command-line driver built on `quotlab-core`.

pub mod cli;
pub mod commands;
pub mod count;
pub mod error;
pub mod formats;
pub mod seeds;

pub use error::CliError;

/// Version string embedded in every report.
pub const VERSION: &str = concat!("quotlab ", env!("CARGO_PKG_VERSION"));
