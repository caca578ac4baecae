//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// Exact-identity operations never hide a failure inside a value: anything
/// that cannot be computed as stated (bad argument, missing cumulant order,
/// degenerate denominator, out-of-domain evaluation) comes back as an error.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An argument violates a precondition (zero denominator, mismatched
    /// variable lists, unknown variable, unsorted times, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation needs cumulants or series coefficients beyond the
    /// truncation order that was supplied. Nothing is ever assumed zero.
    #[error("truncation: {0}")]
    Truncation(String),

    /// A spec-level degeneracy (e.g. an identically-zero denominator in a
    /// rational function of t).
    #[error("degenerate spec: {0}")]
    DegenerateSpec(String),

    /// The cumulant sequence was rejected as not coming from any Kolmogorov
    /// measure, and the operation only runs on genuine measures.
    #[error("rejected spec: {0}")]
    RejectedSpec(String),

    /// Floating-point evaluation requested outside a closed form's domain
    /// of convergence.
    #[error("domain: {0}")]
    Domain(String),

    /// Malformed configuration input (JSON schema violations, bad "p/q"
    /// literals, both or neither spec form present).
    #[error("config: {0}")]
    Config(String),

    /// A built-in cross-check failed. This indicates a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
