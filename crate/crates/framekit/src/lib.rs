//! File formats, reports and the command-line driver for `framekit-core`.

pub mod cli;
pub mod format;
pub mod report;

pub use cli::run;
