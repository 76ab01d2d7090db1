use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use local_derand::claims::{Checks, ClaimTally};
use local_derand::{Error, LedgerReport, RoundLedger};
use serde::Serialize;

pub const SCHEMA: &str = "v1";

#[derive(Debug, Serialize)]
pub struct GraphInfo {
    pub source: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Serialize)]
pub struct Violation {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<&'static str>,
    pub detail: String,
}

impl Violation {
    pub fn from_error(e: &Error) -> Self {
        let kind = match e {
            Error::Claim { .. } => "claim",
            Error::Precondition { .. } => "precondition",
            Error::Contract(_) => "contract",
            Error::RetryBudget { .. } => "retry-budget",
            Error::RandomFailure { .. } => "random-failure",
            Error::Budget { .. } => "oracle-budget",
            Error::Parse { .. } | Error::UnknownNode(_) | Error::Domain(_) => "input",
        };
        let claim = match e {
            Error::Claim { claim, .. } => Some(*claim),
            _ => None,
        };
        Violation { kind, claim, detail: e.to_string() }
    }
}

/// The JSON document written by `run` and `oracle`. Contains no timings, so
/// equal inputs give byte-identical files.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub algo: &'static str,
    pub graph: GraphInfo,
    pub config: serde_json::Value,
    /// `pass` when every recorded claim held.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
    pub outputs: serde_json::Value,
    pub claims: Vec<ClaimTally>,
    pub ledger: LedgerReport,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

pub struct Body {
    pub outputs: serde_json::Value,
    pub checks: Checks,
    pub ledger: RoundLedger,
}

pub fn status(checks: &Checks) -> &'static str {
    if checks.all_passed() {
        "pass"
    } else {
        "fail"
    }
}

/// Writes `bytes` to `path` through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().context("output path has no file name")?.to_string_lossy();
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    let result = (|| -> Result<()> {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result.with_context(|| format!("writing {}", path.display()))
}

pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}
