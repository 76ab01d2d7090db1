use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("invalid input: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// The rounding precondition `u - c >= 0.1 u` failed at the fractional point.
    #[error("rounding precondition failed: utility {utility}, cost {cost}")]
    Precondition { utility: f64, cost: f64 },

    /// A proven invariant did not hold. This always indicates a bug.
    #[error("claim `{claim}` violated: {detail}")]
    Claim { claim: &'static str, detail: String },

    #[error("cluster centered at {center} exhausted {attempts} rounding attempts")]
    RetryBudget { center: NodeId, attempts: usize },

    #[error("randomized construction failed after {attempts} seeds")]
    RandomFailure { attempts: usize },

    #[error("{what} of size {size} exceeds the oracle budget {budget}")]
    Budget { what: &'static str, size: usize, budget: usize },
}

impl Error {
    pub(crate) fn claim(claim: &'static str, detail: impl Into<String>) -> Self {
        Error::Claim { claim, detail: detail.into() }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
