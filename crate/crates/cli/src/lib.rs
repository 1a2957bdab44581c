//! Command-line front end: input formats, commands and output payloads.

pub mod args;
mod error;
pub mod fuzz;
pub mod input;
pub mod output;
mod run;

pub use error::CliError;
pub use run::run;
