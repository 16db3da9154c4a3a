// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("closeness undefined: graph has {components} connected components")]
    Disconnected { components: usize },

    #[error("importance vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node set mismatch: {0}")]
    NodeSetMismatch(String),

    #[error("unknown node label {0:?}")]
    UnknownLabel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by a structural property of a valid input
    /// (for example a disconnected graph), as opposed to malformed input or
    /// bad configuration.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Disconnected { .. })
    }
}
