//! Command-line front end for `clifford-forge-core`: JSON file formats,
//! subcommand dispatch and thread-parallel exhaustive search.

pub mod cli;
pub mod error;
pub mod io;
pub mod search;

pub use cli::{run, Outcome};
pub use error::CliError;
