//! Command-line front end for `minorsep-core`: the edge-list format, JSON
//! certificates and reports, and the scaling benchmark.

pub mod bench;
pub mod cli;
pub mod edgelist;
pub mod error;
pub mod family;
pub mod report;

pub use error::{CliError, Result};
