//! Command-line front end: class literals, table cache files, and the
//! subcommand bodies behind the `exceptional` binary.

pub mod cache;
pub mod commands;
pub mod literal;
