use std::fmt;

use serde::Serialize;

/// The way a candidate vertex assignment fails to be a graph map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Edge `u v` of the domain whose images are neither equal nor adjacent.
    Edge { u: usize, v: usize, fu: usize, fv: usize },
    /// The base vertex is not sent to the base vertex.
    Base { image: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Edge { u, v, fu, fv } => {
                write!(f, "edge {u}-{v} maps to {fu},{fv} which are neither equal nor adjacent")
            }
            Violation::Base { image, expected } => {
                write!(f, "base vertex maps to {image}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{family}: {constraint}")]
    Domain { family: String, constraint: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not a graph map: {0}")]
    NotAGraphMap(Violation),

    #[error("enumeration cap exceeded: {what} reached {count} (cap {cap})")]
    CapExceeded {
        what: &'static str,
        count: u64,
        cap: u64,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
