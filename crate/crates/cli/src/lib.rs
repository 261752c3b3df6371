//! Library side of the `semiglue` command-line tool.

pub mod commands;
pub mod corpus;
pub mod problem;
pub mod report;

pub use commands::{run, CliError, Options};
pub use problem::{parse_problem, ParseError, ProblemFile};
pub use report::Report;
