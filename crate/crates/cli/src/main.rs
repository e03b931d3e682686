//! `ahtop`: command-line front end for `ahtop-core`.
//!
//! Exit status: 0 success, 1 refuted property, 2 resource cap, 3 input error.

mod args;
mod input;
mod report;
mod verbs;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use report::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Failure::INPUT),
            };
        }
    };
    match verbs::run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.status())
        }
    }
}
