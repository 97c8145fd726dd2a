//! File formats and command implementations behind the `ccd` binary.

pub mod bench;
pub mod cache;
pub mod cli;
pub mod commands;
pub mod csvio;
mod error;
pub mod report;

pub use error::{CliError, Result};

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

/// Parses `args` and runs the command, mapping failures to exit codes:
/// 0 success, 1 usage or configuration, 2 I/O or parse, 3 internal error.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match cli::Cli::try_parse_from(args) {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(parsed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ccd: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
