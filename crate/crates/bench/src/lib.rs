//! Shared fixtures for the criterion benches.

use local_derand::{gen, Graph};

/// Node counts of the sweep.
pub const SIZES: [u64; 3] = [128, 256, 512];

/// `G(n, 8/n)` with a fixed seed, the input family of every bench.
pub fn sparse(n: u64) -> Graph {
    gen::gnp(n, (8.0 / n as f64).min(1.0), 0xBEEF).expect("p is in [0, 1]")
}
