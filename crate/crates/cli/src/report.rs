use std::fmt;
use std::fs;
use std::path::Path;

use ahtop_core::Error;
use serde::Serialize;
use serde_json::Value;

use crate::args::Cli;

/// Why a command stopped without a normal result.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Cap(String),
    Io(String),
}

impl Failure {
    pub const REFUTED: u8 = 1;
    pub const CAP: u8 = 2;
    pub const INPUT: u8 = 3;

    pub fn status(&self) -> u8 {
        match self {
            Failure::Cap(_) => Self::CAP,
            Failure::Input(_) | Failure::Io(_) => Self::INPUT,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input: {m}"),
            Failure::Cap(m) => write!(f, "{m}"),
            Failure::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// How a completed command turned out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Refuted,
    /// Finished, but part of the answer hit the cap.
    Capped,
}

impl Outcome {
    pub fn refuted_if(bad: bool) -> Outcome {
        if bad {
            Outcome::Refuted
        } else {
            Outcome::Ok
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Refuted => "refuted",
            Outcome::Capped => "inconclusive",
        }
    }

    fn status(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Refuted => Failure::REFUTED,
            Outcome::Capped => Failure::CAP,
        }
    }
}

#[derive(Serialize)]
struct Meta<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    cap: u64,
    seed: u64,
    parameters: Value,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    meta: Meta<'a>,
    status: &'a str,
    result: &'a T,
}

/// Wraps `result` with the metadata block and writes it. `parameters` holds
/// every verb-specific limit used, so the run can be repeated exactly.
pub fn emit<T: Serialize>(
    cli: &Cli,
    command: &str,
    parameters: Value,
    outcome: Outcome,
    result: &T,
) -> Result<u8, Failure> {
    let envelope = Envelope {
        meta: Meta {
            tool: "ahtop",
            version: env!("CARGO_PKG_VERSION"),
            command,
            cap: cli.cap,
            seed: cli.seed,
            parameters,
        },
        status: outcome.label(),
        result,
    };
    let mut text = serde_json::to_string_pretty(&envelope).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    write_text(cli.out.as_deref(), &text)?;
    Ok(outcome.status())
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
