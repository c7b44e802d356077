//! `dcoulomb`: spectra, wavefunction tables and the self-check suite for the
//! deformed Coulomb problem, written as JSON or CSV.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 unbound state requested.

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

pub mod commands;
pub mod config;
pub mod output;

pub use config::{Cli, Command, RunConfig};

/// Directory that relative output paths are resolved against.
pub const OUTPUT_DIR_ENV: &str = "DCOULOMB_OUTPUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Unbound(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Unbound(_) => 3,
        }
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dcoulomb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
