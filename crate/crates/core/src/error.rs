use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("infeasible: {0}")]
    Infeasible(Infeasibility),

    #[error("graph has {n} nodes, above the exhaustive-search limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    /// A computed driver set failed its own verification. Never expected.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn argument(message: impl Into<String>) -> Self {
        Error::Argument(message.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

/// Why no driver set avoiding the inaccessible nodes exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// Every member of a dilation set is inaccessible.
    DilationInaccessible { members: Vec<usize> },
    /// Every member of a child SCC is inaccessible.
    ChildSccInaccessible { members: Vec<usize> },
    /// Each dilation set has an accessible member, but no maximum matching
    /// leaves only accessible nodes unmatched.
    NoAccessibleMatching,
    /// The dilation sets admit no system of distinct accessible
    /// representatives.
    NoDistinctRepresentatives,
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::DilationInaccessible { members } => {
                write!(f, "every node of dilation set {members:?} is inaccessible")
            }
            Infeasibility::ChildSccInaccessible { members } => {
                write!(f, "every node of child SCC {members:?} is inaccessible")
            }
            Infeasibility::NoAccessibleMatching => {
                f.write_str("no maximum matching leaves only accessible nodes unmatched")
            }
            Infeasibility::NoDistinctRepresentatives => {
                f.write_str("dilation sets have no distinct accessible representatives")
            }
        }
    }
}
