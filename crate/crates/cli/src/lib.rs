//! Suites, report format and run logic behind the `verify` binary.

pub mod keum_import;
pub mod report;
pub mod suites;

pub use report::{Assertion, Report, Status};
pub use suites::{run, RunConfig, RunError, Suite, Sweep};
