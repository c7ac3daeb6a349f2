//! Command-line front end for the hypred toolkit and the verification suite
//! it runs.

pub mod commands;
pub mod config;
pub mod error;
pub mod expected;
pub mod properties;
pub mod render;
pub mod suite;

pub use config::{Format, RunConfig};
pub use error::CliError;
