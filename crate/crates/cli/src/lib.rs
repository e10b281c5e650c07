//! Library side of the `sgedge` command-line tool.

pub mod commands;
pub mod report;
