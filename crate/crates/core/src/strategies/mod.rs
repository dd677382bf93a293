//! Cop move rules and robber policies.

mod cop;
mod robber;

pub use cop::{
    dismantable_move, protective_move, recursive_s_move, s_star_move, CopStrategy, RecursiveS,
};
pub use robber::RobberPolicy;

use thiserror::Error;

use crate::error::GraphError;
use crate::graph::Vertex;

/// Failures raised while a strategy picks a move.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("no vertex on the domination chain of {robber} is adjacent to the cop at {cop}")]
    Inapplicable { cop: Vertex, robber: Vertex },
    #[error("recursive strategy is undefined for cop {cop}, robber {robber}")]
    Undefined { cop: Vertex, robber: Vertex },
    #[error("cop at {cop} has no dominator to fall back on (robber at {robber})")]
    ConditionViolation { cop: Vertex, robber: Vertex },
    #[error("script error: {0}")]
    Script(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type StrategyResult<T> = std::result::Result<T, StrategyError>;
