//! Cops and robbers on reflexive graphs.
//!
//! Dominating and dismantling orders, the retractions they induce, the cop
//! strategies built on those retractions, a game engine with three winning
//! criteria, and exact solvers used as independent oracles.

pub mod cli;
pub mod engine;
pub mod error;
pub mod generators;
pub mod graph;
pub mod lazy;
pub mod orders;
pub mod retractions;
pub mod solver;
pub mod strategies;

pub use error::{GraphError, Result};
pub use graph::{Graph, Vertex};
