//! Crate-wide error type.
//!
//! Variants are grouped by what the caller can do about them: `Validation`
//! failures describe bad input data (and enumerate every violation found),
//! `Precision` failures mean a truncation order was too small for the
//! requested computation, and `Unsupported` marks inputs outside the
//! supported chart/monoid class.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input data failed validation; the message lists every violation.
    #[error("validation failed:\n{0}")]
    Validation(String),

    /// A series or arc did not carry enough precision for the request.
    #[error("insufficient precision: {0}")]
    Precision(String),

    /// Text input that did not parse; `offset` is a 0-based character index.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Exact-arithmetic failure such as division by zero.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// Structurally valid input outside the supported class.
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn validation(msgs: &[String]) -> Self {
        Error::Validation(msgs.join("\n"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
