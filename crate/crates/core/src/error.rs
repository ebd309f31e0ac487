use std::io;

use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("state has dimension {actual}, {system} expects {expected}")]
    DimensionMismatch {
        system: &'static str,
        expected: usize,
        actual: usize,
    },

    /// A precondition on an argument was violated.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The orbit left the bounded region or produced a non-finite value.
    #[error("orbit diverged at iteration {step}")]
    Divergence { step: u64 },

    #[error("insufficient length: need {required} {unit}, got {actual}")]
    InsufficientLength {
        required: usize,
        actual: usize,
        unit: &'static str,
    },

    #[error("malformed key: {0}")]
    KeyParse(String),

    #[error("key rejected after {attempts} perturbation attempts: {reason}")]
    KeyRejected { attempts: u32, reason: String },

    #[error("malformed image: {0}")]
    Image(String),

    #[error(transparent)]
    Pnm(#[from] PnmError),

    #[error("malformed envelope: {0}")]
    Envelope(String),

    #[error("special function failed to converge for a = {a}, x = {x}")]
    Convergence { a: f64, x: f64 },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Netpbm parse failures, one variant per diagnostic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PnmError {
    #[error("not a binary PGM/PPM file (magic {0:?})")]
    Magic(String),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("unsupported maxval {0}, only 255 is accepted")]
    Maxval(u32),
    #[error("truncated pixel data: need {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
