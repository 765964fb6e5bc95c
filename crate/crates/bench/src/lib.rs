//! Drivers behind the `lazykron` command line: oracle verification,
//! multiplication-count audits, benchmark sweeps and the hinted
//! matrix-vector harness.

pub mod config;
pub mod counts;
pub mod error;
pub mod hinted;
pub mod output;
pub mod timing;
pub mod verify;

pub use config::{Cli, Command, OutputFormat, RunConfig, ScalarKind};
pub use error::{BenchError, Result};

/// Exit status for a run whose checks all passed.
pub const EXIT_OK: u8 = 0;
/// Exit status when a correctness or count check failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status for usage and configuration errors.
pub const EXIT_USAGE: u8 = 2;
