//! Command-line front end for the entropic-geometry library: λ-sweeps,
//! single-setting geometry reports, measure comparisons and the Schumacher
//! quadrilateral, with CSV/JSON emission.
//!
//! Everything an invocation produces is rendered to one in-memory string
//! and written in a single step, so a failing run never leaves partial
//! output behind.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod labels;
pub mod output;
pub mod statefile;

pub use error::{CliError, CliResult};
