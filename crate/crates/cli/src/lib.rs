//! Command-line front end: expression parser, text forms, verification
//! suites and report records.

pub mod expr;
pub mod report;
pub mod suites;
pub mod text;
