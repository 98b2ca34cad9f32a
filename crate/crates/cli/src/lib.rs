//! Command-line front end for the rough-bessel toolkit: path simulation,
//! estimation over path CSV files, and Monte Carlo experiment tables driven
//! by TOML/JSON configurations.

pub mod config;
pub mod csvpath;
pub mod error;
pub mod report;

pub use error::{CliError, CliResult};
