//! Exact semantics of the abstract Tile Assembly Model.
//!
//! A [`Tas`] is a tile set, an anchored seed and a temperature. Assemblies are
//! partial maps from lattice positions to tile ids and are compared exactly,
//! without any translation quotient.

mod dynamics;
pub mod gen;
mod geom;
mod model;
mod parse;
mod stability;

pub use dynamics::{
    attach, frontier, is_directed_up_to, is_producible, is_terminal, producible_set,
    producible_set_capped, produces,
    run_sequence, AssemblySequence, Directedness, DEFAULT_ASSEMBLY_CAP,
};
pub use geom::{Dir, Pos};
pub use model::{Assembly, Glue, GlueId, Tas, TileId, TileType};
pub use parse::{dump_assembly, parse_tas, write_tas, TasError};
pub use stability::{binding_strength, is_tau_stable, min_cut, min_cut_by_flow};

use thiserror::Error;

/// Failures of the dynamic operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtamError {
    #[error("attachment of tile {tile} at {pos} is not in the frontier")]
    NotInFrontier { pos: Pos, tile: String },
    #[error("budget exceeded: more than {cap} assemblies")]
    BudgetExceeded { cap: usize },
}
