use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by graph construction, file parsing and the order/retraction
/// machinery. Game-time failures live in [`crate::strategies::StrategyError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is not in a graph of order {order}")]
    UnknownVertex { vertex: Vertex, order: usize },
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("sequence is not a permutation of the {order} vertices")]
    NotPermutation { order: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("delta map cycles through vertex {vertex}")]
    DeltaCycle { vertex: Vertex },
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("retraction family is not total: rho_{rank}({vertex}) is undefined")]
    NonTotal { rank: usize, vertex: Vertex },
    #[error("rank {rank} is out of range for this family")]
    RankOutOfRange { rank: usize },
    #[error("generator contract violated: {0}")]
    Generator(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
