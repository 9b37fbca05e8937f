//! Static encodings used by the intrinsically universal tile set: glue
//! indices and binary codes, interleaved addresses, the tile lookup table,
//! probe tables and the geometry of a superside.

mod glue;
mod layout;
mod lookup;
mod probe;

pub use glue::{build_glue_table, Address, GlueTable, Quad};
pub use layout::{superside_layout, Region, SupersideLayout};
pub use lookup::{
    build_lookup_table, build_lookup_table_capped, category_entries, dual_lookup, lookup,
    max_entries_formula, validly_addresses, LookupTable, TapeGeometry, DEFAULT_SLOT_CAP,
};
pub use probe::{build_probe_table, ProbeSlot, ProbeTable};

use atam_core::GlueId;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("glue {0:?} is not in the glue table")]
    UnknownGlue(GlueId),
    #[error("lookup table needs {slots} slots, cap is {cap}")]
    TooLarge { slots: u64, cap: u64 },
}
