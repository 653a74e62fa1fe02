use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An index range `[a, b]` is empty or starts at zero.
    #[error("range error: [{a}, {b}] is not a valid 1-based digit range")]
    Range { a: u64, b: u64 },
    /// A construction would exceed the configured size cap.
    #[error("resource cap exceeded: {needed} points requested, cap is {cap}")]
    Resource { needed: u128, cap: u128 },
    /// A Yamaguti–Hata series was requested with |t| >= 1.
    #[error("series does not contract: |t| = {0} >= 1")]
    Contraction(f64),
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
