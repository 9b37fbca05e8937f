//! m-block supertiles, representation functions and a bounded checker for
//! equivalent production and equivalent dynamics between a simulator and a
//! simulated system.

mod block;
mod check;
mod rep;

pub use block::{block_at, MBlock};
pub use check::{
    check_equivalent_dynamics, check_equivalent_production, check_simulation, explore,
    BlockSimulator, CheckConfig, Counterexample, SimReport, Simulator, StateGraph,
};
pub use rep::{
    maps_cleanly, parse_rep, represent, validate_rep, BlockRep, ExtensionalRep, IdentityRep,
    RepError,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("budget exceeded: more than {cap} simulator states")]
    BudgetExceeded { cap: usize },
}
