//! Deterministic distributed graph algorithms simulated in the LOCAL model.

pub mod claims;
pub mod clustering;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hitting;
pub mod ledger;
pub mod matching;
pub mod mis;
#[cfg(feature = "oracles")]
pub mod oracles;
pub mod rng;
pub mod rounding;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, Orientation};
pub use ledger::{LedgerReport, RoundLedger};
pub use rng::SeedStream;
