//! Accounting of simulated LOCAL rounds.
//!
//! Every phase declares the hop radius it reads and the number of sequential
//! rounds it stands for. Steps that aggregate over the whole graph are
//! labelled with a `global/` prefix and charged at the graph diameter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub label: String,
    pub radius: u64,
    pub rounds: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoundLedger {
    entries: Vec<LedgerEntry>,
    total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub label: String,
    pub radius_max: u64,
    pub rounds: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerReport {
    pub total: u64,
    pub rows: Vec<LedgerRow>,
}

impl RoundLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an entry. A step reading `radius` hops costs at least `radius` rounds.
    pub fn charge(&mut self, label: impl Into<String>, radius: u64, rounds: u64) -> Result<()> {
        let label = label.into();
        if rounds < radius {
            return Err(Error::Contract(format!("`{label}` charged {rounds} rounds for radius {radius}")));
        }
        self.total += rounds;
        self.entries.push(LedgerEntry { label, radius, rounds });
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    /// Moves all entries of `other` into `self`.
    pub fn absorb(&mut self, other: RoundLedger) {
        self.total += other.total;
        self.entries.extend(other.entries);
    }

    /// Per-label sums, ordered by first occurrence.
    pub fn report(&self) -> LedgerReport {
        let mut rows: Vec<LedgerRow> = Vec::new();
        for e in &self.entries {
            match rows.iter_mut().find(|r| r.label == e.label) {
                Some(row) => {
                    row.rounds += e.rounds;
                    row.radius_max = row.radius_max.max(e.radius);
                }
                None => rows.push(LedgerRow { label: e.label.clone(), radius_max: e.radius, rounds: e.rounds }),
            }
        }
        LedgerReport { total: self.total, rows }
    }
}
