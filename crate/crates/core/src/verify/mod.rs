//! Seeded verification suites for the theorem-backed properties, shared by
//! the CLI `verify` command and the acceptance test suite.

pub mod gen;
pub mod suites;

pub use suites::{run_suite, suite_names, SuiteReport, UnknownSuite};
