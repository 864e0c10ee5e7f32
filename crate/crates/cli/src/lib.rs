//! Gyro dead reckoning, integrator drift comparison and the kinematics
//! property suite, as used by the `rotkin` binary.

// `!(x > y)` is used deliberately so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod io;

pub use commands::{run_compare, run_deadreckon, run_verify, RunConfig};
pub use error::CliError;
pub use io::{ingest_gyro_csv, OutputFormat};
