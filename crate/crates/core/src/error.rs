use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("binomial tree root is not in the informed set")]
    RootNotInformed,

    #[error("phase 1 left {uninformed} cube vertices uninformed after round {round}")]
    SchemePhaseOverrun { round: usize, uninformed: usize },

    #[error("graph has {0} vertices; exact search is capped at 16")]
    TooLarge(usize),

    #[error("n = {0} is odd")]
    OddN(u64),

    #[error("n = {0} is even")]
    EvenN(u64),

    #[error("n = {0} has no decomposition 2^p - 2^k - r")]
    NoDecomposition(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

impl Error {
    pub(crate) fn unknown(v: VertexId) -> Self {
        Error::UnknownVertex(v.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
