//! Report assembly and argument parsing for the `mhs5` command-line tool.

pub mod parse;
pub mod report;
