use thiserror::Error;

/// A text-form parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self { position, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReidError {
    #[error("plurigenus formula needs m >= 2, got m = {0}")]
    Domain(i64),
    #[error("invalid quotient type b = {b}, r = {r}: need r >= 2, 0 < b < r, gcd(b, r) = 1")]
    InvalidSingularity { b: i64, r: i64 },
    #[error("basket multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("K^3 must be positive, got {0}")]
    NonPositiveK3(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpsError {
    #[error("weights {0:?} are not well formed: some 4 of them share a common factor")]
    IllFormed([u32; 5]),
    #[error("weights and degree must be positive")]
    NonPositive,
    #[error("canonical weight k = {0} is not positive; only general-type hypersurfaces are supported")]
    UnsupportedDomain(i64),
    #[error("degree index must be non-negative, got {0}")]
    NegativeDegree(i64),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("no basket within r <= {r_max}, size <= {size_max} matches; {diagnostics}")]
    NotFound { r_max: u32, size_max: u32, diagnostics: String },
    #[error("{} non-conjugate baskets match the data: {}", .candidates.len(), .candidates.join(" | "))]
    Ambiguous { candidates: Vec<String> },
    #[error(transparent)]
    Reid(#[from] ReidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset `{id}` does not apply to m0 = {m0}")]
    NotApplicable { id: String, m0: i64 },
    #[error("schedule is empty")]
    EmptySchedule,
    #[error("search cap m_hi = {m_hi} is below the separation threshold {sep}")]
    RangeTooSmall { m_hi: i64, sep: i64 },
    #[error("no birational m found up to {0} for preset `{1}`")]
    NoThreshold(i64, String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
