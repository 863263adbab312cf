//! Command-line front end for the `arclen` studies.
//!
//! Every subcommand produces a [`report::ReportTable`] written as CSV or JSON.
//! Exit codes: 0 on success, 1 when a computation fails or a check inside the
//! report does not hold (the table is still written), 2 on usage errors.

pub mod args;
pub mod report;
pub mod run;

pub use args::{parse, Cli, Command, Format};
pub use report::{Cell, ReportTable};
pub use run::{run, Outcome, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
