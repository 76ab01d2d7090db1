//! Bookkeeping for proven inequalities that the algorithms re-check at runtime.
//!
//! In strict mode the first violation becomes [`Error::Claim`]; otherwise
//! violations are only counted, which is what the stress configurations with
//! shrunken thresholds use.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative tolerance for floating-point comparisons of claim sides.
pub const REL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimTally {
    pub claim: &'static str,
    pub status: &'static str,
    pub checked: u64,
    pub failed: u64,
    /// Largest observed `lhs / rhs` over comparisons with `rhs > 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Checks {
    strict: bool,
    tallies: Vec<ClaimTally>,
}

impl Checks {
    pub fn new(strict: bool) -> Self {
        Checks { strict, tallies: Vec::new() }
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    fn tally(&mut self, claim: &'static str) -> &mut ClaimTally {
        if let Some(pos) = self.tallies.iter().position(|t| t.claim == claim) {
            return &mut self.tallies[pos];
        }
        self.tallies.push(ClaimTally {
            claim,
            status: "pass",
            checked: 0,
            failed: 0,
            worst_ratio: None,
            first_failure: None,
        });
        self.tallies.last_mut().unwrap()
    }

    /// Records a boolean claim.
    pub fn holds(&mut self, claim: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Result<bool> {
        let strict = self.strict;
        let t = self.tally(claim);
        t.checked += 1;
        if !ok {
            t.failed += 1;
            t.status = "fail";
            let d = detail();
            if strict {
                return Err(Error::claim(claim, d));
            }
            t.first_failure.get_or_insert(d);
        }
        Ok(ok)
    }

    /// Records `lhs <= rhs` up to [`REL_TOLERANCE`].
    pub fn leq(&mut self, claim: &'static str, lhs: f64, rhs: f64, ctx: impl FnOnce() -> String) -> Result<bool> {
        let tol = REL_TOLERANCE * (lhs.abs() + rhs.abs() + 1.0);
        self.compare(claim, lhs, rhs, tol, ctx)
    }

    /// Records `lhs <= rhs` with no tolerance.
    pub fn leq_exact(&mut self, claim: &'static str, lhs: f64, rhs: f64, ctx: impl FnOnce() -> String) -> Result<bool> {
        self.compare(claim, lhs, rhs, 0.0, ctx)
    }

    fn compare(
        &mut self,
        claim: &'static str,
        lhs: f64,
        rhs: f64,
        tol: f64,
        ctx: impl FnOnce() -> String,
    ) -> Result<bool> {
        let ok = lhs <= rhs + tol;
        if rhs > 0.0 && rhs.is_finite() {
            let ratio = lhs / rhs;
            let t = self.tally(claim);
            t.worst_ratio = Some(t.worst_ratio.map_or(ratio, |r| r.max(ratio)));
        }
        self.holds(claim, ok, || format!("{} ({lhs} > {rhs})", ctx()))
    }

    pub fn tallies(&self) -> &[ClaimTally] {
        &self.tallies
    }

    pub fn get(&self, claim: &str) -> Option<&ClaimTally> {
        self.tallies.iter().find(|t| t.claim == claim)
    }

    pub fn all_passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0)
    }

    pub fn absorb(&mut self, other: &Checks) {
        for o in &other.tallies {
            let t = self.tally(o.claim);
            t.checked += o.checked;
            t.failed += o.failed;
            if o.failed > 0 {
                t.status = "fail";
            }
            if let Some(r) = o.worst_ratio {
                t.worst_ratio = Some(t.worst_ratio.map_or(r, |x| x.max(r)));
            }
            if t.first_failure.is_none() {
                t.first_failure.clone_from(&o.first_failure);
            }
        }
    }
}
