use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the range the operation is defined for.
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// A sequence entry violates a positivity (or finiteness) requirement.
    Domain {
        quantity: &'static str,
        index: usize,
        value: f64,
    },
    /// An index below the sequence's declared start.
    IndexBelowStart { index: usize, start: usize },
    /// A finite table was queried past its last entry.
    TableExhausted { index: usize, len: usize },
    /// The matrix has a zero (or non-finite) diagonal entry.
    NotNormal { row: usize, value: f64 },
    /// A dense method was asked for a row it does not contain, or the row cap was hit.
    RowLimit { requested: usize, limit: usize },
    /// Malformed dense matrix or sample table.
    Shape { what: &'static str, detail: String },
    /// Quadrature failed to reach the requested tolerance.
    Accuracy {
        quantity: &'static str,
        estimate: f64,
        tolerance: f64,
    },
    /// Expression grammar error at a byte offset.
    Parse { position: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                name,
                value,
                requirement,
            } => write!(f, "invalid {name} = {value}: requires {requirement}"),
            Error::Domain {
                quantity,
                index,
                value,
            } => write!(
                f,
                "{quantity} at index {index} is {value}, must be positive and finite"
            ),
            Error::IndexBelowStart { index, start } => {
                write!(f, "index {index} is below the sequence start {start}")
            }
            Error::TableExhausted { index, len } => {
                write!(f, "table has {len} entries, index {index} requested")
            }
            Error::NotNormal { row, value } => {
                write!(
                    f,
                    "diagonal entry of row {row} is {value}; method is not normal"
                )
            }
            Error::RowLimit { requested, limit } => {
                write!(
                    f,
                    "row {requested} requested but only {limit} rows are available"
                )
            }
            Error::Shape { what, detail } => write!(f, "malformed {what}: {detail}"),
            Error::Accuracy {
                quantity,
                estimate,
                tolerance,
            } => write!(
                f,
                "{quantity}: error estimate {estimate:e} exceeds tolerance {tolerance:e}"
            ),
            Error::Parse { position, message } => {
                write!(f, "parse error at offset {position}: {message}")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Rejects `k < 1` (or NaN) for the absolute summability indices.
pub(crate) fn check_k(k: f64) -> Result<()> {
    if k >= 1.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "k",
            value: k,
            requirement: "k >= 1",
        })
    }
}
