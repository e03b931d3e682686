use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on enumerated objects (graph maps, paths, search states).
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Resource limits shared by every enumeration in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximum number of objects a single enumeration or search may produce.
    pub cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap: DEFAULT_CAP }
    }
}

impl Limits {
    pub fn with_cap(cap: u64) -> Limits {
        Limits { cap }
    }

    pub(crate) fn check(&self, what: &'static str, count: usize) -> Result<()> {
        let count = count as u64;
        if count > self.cap {
            Err(Error::CapExceeded {
                what,
                count,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}
