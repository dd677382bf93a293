//! Independent oracles: the cop-win fixpoint, bounded adversarial search,
//! and timing profiles of time-dependent cop strategies.

mod cop_win;
mod search;
mod timing;

pub use cop_win::{decide_cop_win, CopWinTable, CopWinVerdict};
pub use search::{
    adversarial_search, adversarial_search_with_budget, CopUniverse, Objective, RobberWitness, SearchOutcome,
    SearchState, DEFAULT_SEARCH_BUDGET,
};
pub use timing::{
    estimate_timing, estimate_timing_with_budget, order_from_protective, RobTime, TimingProfile,
    DEFAULT_TIMING_BUDGET,
};

use thiserror::Error;

use crate::error::GraphError;
use crate::orders::OrderViolation;
use crate::strategies::StrategyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("order recovered from the profile is not dominating: {0}")]
    RecoveredOrderInvalid(OrderViolation),
}

pub type SolverResult<T> = std::result::Result<T, SolverError>;
