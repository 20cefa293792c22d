//! Library side of the `qcount` binary.

pub mod commands;
mod error;
pub mod gen;
pub mod report;
pub mod selftest;

pub use error::CliError;
