//! Command-line harness: oracle verification, operation counts, peak work
//! registers and cost predictions for the algorithms of `polymul`.

pub mod algos;
pub mod commands;
pub mod config;
pub mod instance;

use std::io::Write;

pub use commands::{run, verify_profiles, Report};
pub use config::{Algo, Base, Cli, Command, Options, RunConfig, UsageError};

/// Parses `args`, runs the command and writes its report; returns the exit
/// status (2 for usage errors, 1 for failures or an unwritable output).
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (command, options) = cli.command.split();
    let cfg = match RunConfig::new(command, options) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = run(&cfg);
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &report.text),
        None => std::io::stdout().write_all(report.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 1;
    }
    report.status
}
