//! Literal syntax, JSON reports and the `hahnfield` command line on top of
//! the `hahnfield` core crate.

pub mod app;
pub mod parse;
pub mod report;
pub mod sample;
