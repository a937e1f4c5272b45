//! File formats, experiment reports and the command-line front end for
//! [`halllab_core`].

pub mod cli;
pub mod config;
pub mod dto;
pub mod error;
pub mod io;
pub mod report;

pub use error::CliError;
pub use report::ExperimentReport;
