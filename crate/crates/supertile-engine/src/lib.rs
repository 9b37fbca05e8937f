//! Protocol-level model of the intrinsically universal construction: each
//! supertile position runs frame competitions, probes and crawlers, and a
//! lattice of positions is checked against the simulated system.

mod ctx;
mod lattice;
mod single;
mod site;

pub use ctx::Ctx;
pub use lattice::{
    encode_seed, represent_site, run_internal, run_lattice, run_once, superside_record, Exhaustive, LatticeRun,
    LatticeSim, LatticeState, Mode, Run, SupersideRecord, MAX_STEPS,
};
pub use single::{arrival_patterns, explore_site, SiteExploration};
pub use site::{
    axis, check_case, expected_case, meetings_sound, Crawler, CrawlerState, Effect, Origin, Probe, SideState, Site,
    SiteCase, SiteEvent, Source,
};

use iu_tables::TableError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("seed assembly is not τ-stable")]
    UnstableSeed,
    #[error("budget exceeded: more than {cap} lattice states")]
    BudgetExceeded { cap: usize },
}
