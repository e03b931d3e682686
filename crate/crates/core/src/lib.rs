//! Discrete (A-)homotopy theory on finite simple graphs.
//!
//! * [`graph`]: simple graphs, standard families, box products, quotients.
//! * [`hom`]: exponential graphs, A-homotopy decision with witnesses,
//!   currying, homotopy-class tables.
//! * [`paths`]: stabilized paths, truncated path and loop graphs, subloops.
//! * [`fiber`]: mapping fiber graphs, the iterated tower and its ladder.
//! * [`pi1`]: presentations of the fundamental group of the 3/4-cycle
//!   filled complex, abelianization, Tietze simplification.
//! * [`exact`]: pointed-set exactness, suspension, the loop/suspension
//!   adjunction, and the Puppe-sequence harness.

pub mod error;
pub mod exact;
pub mod fiber;
pub mod graph;
pub mod hom;
pub mod limits;
pub mod paths;
pub mod pi1;

pub use error::{Error, Result, Violation};
pub use limits::Limits;
