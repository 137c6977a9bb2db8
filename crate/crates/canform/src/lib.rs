//! File formats and the command-line driver for `canform-core`.

pub mod cli;
pub mod json;
pub mod latex;
pub mod suites;
