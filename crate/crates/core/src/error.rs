use thiserror::Error;

use crate::Variant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("flower snarks are defined for n >= 3, got n = {0}")]
    OutOfDomain(usize),

    #[error("copy index {index} out of range for J_{n}")]
    CopyOutOfRange { index: usize, n: usize },

    #[error("unknown export format `{0}` (expected dimacs, json or adjlist)")]
    UnknownFormat(String),

    #[error("unknown variant `{0}`")]
    UnknownVariant(String),

    #[error("variant `{variant}` expects a {expected} candidate")]
    KindMismatch {
        variant: Variant,
        expected: &'static str,
    },

    #[error("pattern of length {len} is longer than the {n} copies available")]
    PatternTooLong { len: usize, n: usize },

    #[error("invalid pattern `{0}`: expected digits 0-4")]
    InvalidPattern(String),

    #[error("{variant} solver supports n in {min}..={max} (got n = {n}){hint}")]
    Capacity {
        variant: Variant,
        n: usize,
        min: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("no constructive certificate for {variant} at n = {n}: {reason}")]
    NoCertificate {
        variant: Variant,
        n: usize,
        reason: &'static str,
    },

    #[error("guard function has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("guard count {0} at a vertex is outside 0..=2")]
    GuardOutOfRange(u8),
}

pub type Result<T> = std::result::Result<T, Error>;
