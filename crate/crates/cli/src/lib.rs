//! Command-line front end and local session service.

pub mod commands;
pub mod config;
pub mod server;

pub use commands::{run, Cli};
pub use config::ConfigError;
