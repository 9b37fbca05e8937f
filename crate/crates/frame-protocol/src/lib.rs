//! Frame formation inside a forming supertile: corner competitions between
//! input supersides, four-layer growth with the WAI signal, and the corner
//! crawler initiations that follow from the resulting win/lose pattern.

mod config;
mod geometry;
mod initiation;
mod machine;

pub use config::{
    all_configs, classify, reference_cases, resolve_competitions, ArrivalOrder, Case, CornerOutcome,
    FrameConfig, Outcome, SideWl,
};
pub use geometry::{ccw_next, ccw_prev, Corner, End, CCW};
pub use initiation::{crawler_initiations, reference_initiations, initiation_rule, Initiation};
pub use machine::{
    explore_frames, frame_fixpoint, Exploration, FrameEvent, FrameSideState, FrameState, Knowledge,
    Wai,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("event {0:?} is not enabled")]
    NotEnabled(machine::FrameEvent),
    #[error("frame deadlocked with sides {0:?} incomplete")]
    Deadlock(Vec<atam_core::Dir>),
    #[error("corner {0:?} cannot be decided from the knowledge of its two sides")]
    Undecided(Corner),
}
