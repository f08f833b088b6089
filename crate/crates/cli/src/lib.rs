//! Command-line front end: hexagon summaries and figures, the length
//! function, sweeps, the minimizer, the trace-coordinate oracle and the
//! invariant suites.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod commands;
pub mod document;
pub mod error;
pub mod format;
pub mod svg;
pub mod sweep;
pub mod verify;

pub use error::{CliError, CliResult};
