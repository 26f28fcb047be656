//! `pointwell`: resonances and decay of a point well in a static field.

mod commands;
mod config;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;
use pointwell_core::Error;

use config::{Command, Flags, Request};

/// Exit codes.
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_IO: u8 = 4;

/// An error on its way to the process exit code.
#[derive(Debug, Clone)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match root_cause(&e) {
            Error::InvalidConfig(_) | Error::Domain(_) | Error::NoBoundState { .. } | Error::LandauPole { .. } => {
                EXIT_CONFIG
            }
            _ => EXIT_NUMERICAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn root_cause(e: &Error) -> &Error {
    match e {
        Error::Pole { source, .. } => root_cause(source),
        other => other,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pointwell",
    version,
    about = "Resonances and decay of a point-like well in a uniform static field"
)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let req = Request::resolve(cli.command, cli.flags)?;
    let outcome = commands::dispatch(&req)?;
    for note in &outcome.notes {
        eprintln!("note: {note}");
    }
    let written = output::emit(&outcome.report, req.output_format, req.output_path.as_deref())?;
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    match outcome.failed_checks {
        0 => Ok(()),
        n => Err(Failure::numerical(format!("{n} self-test check(s) failed"))),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
