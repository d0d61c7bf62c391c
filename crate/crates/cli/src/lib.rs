//! File formats, table reproduction and JSON reporting behind the
//! `concat-blocking` command-line tool.

pub mod fieldarg;
pub mod formats;
pub mod report;
pub mod reproduce;
