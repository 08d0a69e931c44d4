// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The Levinson–Durbin recursion (or a least-squares solve) broke down.
    #[error("numerical degeneracy at {stage}: {detail}")]
    NumericalDegeneracy { stage: String, detail: String },

    #[error("series too short: length {len}, need at least {required}")]
    SeriesTooShort { len: usize, required: usize },

    #[error("segment too short: length {len}, need at least {required}")]
    SegmentTooShort { len: usize, required: usize },

    /// Unreadable input; the message names the offending line.
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("no order in 0..={max_order} could be fitted (last failure: {last})")]
    NoFittableOrder { max_order: usize, last: Box<Error> },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Self::InvalidArgument(msg.into())
    }

    pub(crate) fn degenerate(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::NumericalDegeneracy {
            stage: stage.into(),
            detail: detail.into(),
        }
    }
}
