//! Command-line front end and HTTP service for the analysis engine.

pub mod commands;
pub mod server;

pub use commands::{run, Cli};
