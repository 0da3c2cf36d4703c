//! `framekit`: frame analysis from the shell.
//!
//! Exit codes: 0 on success or a found witness, 1 on a valid negative result
//! (no witness, or a family that only spans a subspace), 2 on any error.

mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Negative,
}

fn main() -> ExitCode {
    // Clap reports usage errors itself and exits with status 2.
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(err) => {
            eprintln!("framekit: error: {err}");
            ExitCode::from(2)
        }
    }
}
