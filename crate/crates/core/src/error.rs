use std::fmt;

use thiserror::Error;

/// 1-based location inside a text input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub fn new(line: usize, column: usize) -> Self {
        Position { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text input.
    #[error("{position}: {message}")]
    Parse { position: Position, message: String },

    /// Structurally well-formed input that violates a model invariant.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown species `{0}`")]
    UnknownSpecies(String),

    #[error("species index {index} out of range for {size} species")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("food web contains a cycle through `{0}`")]
    Cycle(String),

    /// Operation only defined for OR-only food webs.
    #[error("{0} is not supported on food webs with AND-mode species")]
    Generalized(&'static str),

    #[error("species `{0}` cannot reach a sink")]
    Infeasible(String),

    #[error("{what} limit exceeded: {needed} > {limit}")]
    LimitExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },

    #[error("time limit of {0} ms exceeded")]
    TimeLimit(u128),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position: Position::new(line, column),
            message: message.into(),
        }
    }

    /// Shifts the line number of a positioned error, for sections embedded in a larger file.
    pub(crate) fn offset_lines(self, offset: usize) -> Self {
        match self {
            Error::Parse { position, message } => Error::Parse {
                position: Position::new(position.line + offset, position.column),
                message,
            },
            other => other,
        }
    }

    /// Resource or feasibility failures, as opposed to bad input.
    pub fn is_resource_failure(&self) -> bool {
        matches!(
            self,
            Error::Generalized(_)
                | Error::Infeasible(_)
                | Error::LimitExceeded { .. }
                | Error::TimeLimit(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
