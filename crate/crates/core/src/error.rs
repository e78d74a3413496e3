// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation (e.g. a vertex
    /// that is not a member of the subset it is queried against).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("vertices referenced by edges have no attributes: {}", .0.join(", "))]
    MissingAttributes(Vec<String>),

    #[error("too many vertices: {0} does not fit a 32-bit vertex id")]
    IdOverflow(usize),

    #[error("node budget of {0} search nodes exceeded")]
    BudgetExceeded(u64),

    #[error("clique budget of {0} maximal cliques exceeded")]
    CliqueBudgetExceeded(u64),

    #[error("component with {size} vertices exceeds the exhaustive-search cap of {cap}")]
    NaiveCap { size: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) | Error::CliqueBudgetExceeded(_) => 3,
            Error::NaiveCap { .. } => 4,
            _ => 2,
        }
    }
}
