//! Command-line front end for `duursma-core`.

pub mod commands;
pub mod corpus;
pub mod format;
pub mod verify;

pub use commands::{run, Cli, Failure, Outcome};
