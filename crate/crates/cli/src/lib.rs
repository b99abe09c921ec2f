//! Command-line front end for `kroncf`.

pub mod app;
pub mod parse;
pub mod report;

pub use app::{main_with_args, run, Cli};
pub use parse::{parse_block, ParseError};
pub use report::AnalysisReport;
