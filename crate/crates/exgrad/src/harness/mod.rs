//! Experiment plumbing for the command-line interface: problem files,
//! built-in presets, trace CSV I/O, convergence-rate estimation, and the
//! consolidated hypothesis checker.

pub mod check;
pub mod presets;
pub mod problem;
pub mod rate;
pub mod trace;

pub use check::{run_checks, CheckItem, CheckReport, CheckStatus};
pub use presets::Preset;
pub use problem::{ExperimentDocument, HarnessError, ValidatedExperiment};
pub use rate::{estimate_rate, RateEstimate, RateError};
pub use trace::{read_trace, write_trace, TraceError, TraceRow};
