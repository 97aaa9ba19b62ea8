// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: edge {u} {v} repeats an earlier edge")]
    DuplicateEdge { line: usize, u: VertexId, v: VertexId },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by bad input data or parameters rather than
    /// the operating system.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::SelfLoop(_) | Error::Config(_) | Error::Parse { .. } | Error::DuplicateEdge { .. }
        )
    }
}
