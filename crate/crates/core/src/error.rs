//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while parsing, evaluating or eliminating.
///
/// Suite failures are data, not errors; this type covers misuse of the API
/// (bad syntax, wrong signature, missing assignments) and resource limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text; `pos` is a byte offset into the source.
    Syntax { pos: usize, msg: String },
    /// The construct is not part of the model's signature
    /// (`+` under `dlo`, `U3` when `m = 2`, a vector of the wrong width).
    Signature(String),
    /// Arity mismatch: wrong vector width, free variable beyond the stated
    /// arity, or incompatible point length.
    Arity(String),
    /// Evaluation hit a free variable with no assigned value.
    UnassignedVar(u32),
    /// A size budget was exhausted; the computation was aborted rather than
    /// allowed to blow up. Checks record this as "skipped".
    Budget(&'static str),
    /// Operation not defined for this model (e.g. closure outside `dlo`).
    Unsupported(String),
    /// Asked for a witness of an empty cell.
    EmptyCell,
    /// A supposedly unreachable state; always a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            Error::Signature(msg) => write!(f, "signature error: {msg}"),
            Error::Arity(msg) => write!(f, "arity error: {msg}"),
            Error::UnassignedVar(v) => write!(f, "no value assigned to variable #{v}"),
            Error::Budget(what) => write!(f, "budget exhausted: {what}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::EmptyCell => write!(f, "cell is empty"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
