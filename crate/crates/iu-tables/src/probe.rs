use std::collections::BTreeSet;

use atam_core::{Dir, GlueId, Tas};

use crate::glue::GlueTable;
use crate::TableError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProbeSlot {
    /// Subregion of the glue with this table index.
    Glue(u16),
    /// Subregion used only by strength-τ sides.
    Tau,
}

/// Geometry of the probe region: one subregion per glue plus the τ slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeTable {
    pub glue_slots: usize,
    pub spacing: usize,
    pub crawler_width: usize,
    pub offset_bits: usize,
}

impl ProbeTable {
    pub fn new(glues: &GlueTable, tile_count: usize) -> Self {
        let bits = glues.bits() as usize;
        let crawler_width = 2 * (4 * bits + 2);
        let spacing = tile_count.max(2 * crawler_width);
        let glue_slots = glues.g();
        let region = spacing * (glue_slots + 1);
        let offset_bits = (usize::BITS - region.leading_zeros()) as usize;
        ProbeTable { glue_slots, spacing, crawler_width, offset_bits }
    }

    pub fn slot_index(&self, slot: ProbeSlot) -> usize {
        match slot {
            ProbeSlot::Glue(i) => i as usize,
            ProbeSlot::Tau => self.glue_slots,
        }
    }

    /// Offset of the probe's column within the probe region.
    pub fn offset(&self, slot: ProbeSlot) -> usize {
        self.slot_index(slot) * self.spacing + self.spacing / 2
    }

    pub fn region_len(&self) -> usize {
        self.spacing * (self.glue_slots + 1)
    }

    /// Length of the encoded probe table: a glue code and an offset per slot.
    pub fn table_len(&self, glues: &GlueTable) -> usize {
        2 * (self.glue_slots + 1) * (glues.bits() as usize + self.offset_bits)
    }

    /// "glue -> offset" lines, τ slot last.
    pub fn render(&self, sys: &Tas, glues: &GlueTable) -> String {
        let mut out = String::new();
        for (i, g) in glues.glues().iter().enumerate() {
            let slot = ProbeSlot::Glue(i as u16);
            out.push_str(&format!("{} -> {}\n", sys.glue(*g).label, self.offset(slot)));
        }
        out.push_str(&format!("tau -> {}\n", self.offset(ProbeSlot::Tau)));
        out
    }
}

/// Probe slots grown by a WW side carrying `glue`. North and east sides probe
/// their own glue's slot. South and west sides probe the slot of every glue
/// that some tile pairs with `glue` on the opposite side with enough combined
/// strength. The τ slot is added iff `glue` has strength τ.
pub fn build_probe_table(
    sys: &Tas,
    glues: &GlueTable,
    side: Dir,
    glue: GlueId,
) -> Result<BTreeSet<ProbeSlot>, TableError> {
    let mut out = BTreeSet::new();
    match side {
        Dir::N | Dir::E => {
            out.insert(ProbeSlot::Glue(glues.index_of(glue)?));
        }
        Dir::S | Dir::W => {
            glues.index_of(glue)?;
            let opp = side.opposite();
            for t in &sys.tiles {
                if t.glue(side) != glue {
                    continue;
                }
                let h = t.glue(opp);
                if sys.strength(glue) + sys.strength(h) >= sys.temperature {
                    out.insert(ProbeSlot::Glue(glues.index_of(h)?));
                }
            }
        }
    }
    if sys.strength(glue) >= sys.temperature {
        out.insert(ProbeSlot::Tau);
    }
    Ok(out)
}
