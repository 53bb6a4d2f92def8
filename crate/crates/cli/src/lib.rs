#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Command-line front end: bound records, energy curves, P-number tables,
//! figure data series and a verification report, written as CSV or JSON.

pub mod cli;
pub mod compute;
mod error;
pub mod record;
pub mod reference;
pub mod verify;

pub use error::{CliError, CliResult};
