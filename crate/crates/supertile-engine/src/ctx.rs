use std::collections::BTreeSet;

use atam_core::{Dir, GlueId, Tas, TileId};
use iu_tables::{build_probe_table, superside_layout, GlueTable, LookupTable, ProbeSlot, SupersideLayout, TableError};

/// Read-only tables for one simulated system.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub sys: Tas,
    pub table: LookupTable,
    pub layout: SupersideLayout,
}

impl Ctx {
    pub fn new(sys: Tas) -> Result<Self, TableError> {
        let layout = superside_layout(&sys)?;
        let table = layout.lookup.clone();
        Ok(Ctx { sys, table, layout })
    }

    pub fn glues(&self) -> &GlueTable {
        self.table.glue_table()
    }

    /// Exclusive bound of the random numbers probes generate: one value per
    /// tile type, so `r mod n` reaches every entry of any address.
    pub fn probe_range(&self) -> u32 {
        self.sys.tiles.len() as u32
    }

    pub fn tau(&self) -> u32 {
        self.sys.temperature
    }

    pub fn entries(&self, collected: [Option<GlueId>; 4]) -> Vec<TileId> {
        self.table.entries_for(collected).to_vec()
    }

    pub fn only(side: Dir, glue: GlueId) -> [Option<GlueId>; 4] {
        let mut c = [None; 4];
        c[side.index()] = Some(glue);
        c
    }

    /// A WW side with this glue grows a single strength-τ probe: the glue has
    /// strength τ and addresses some tile on its own.
    pub fn tau_probe(&self, side: Dir, glue: GlueId) -> bool {
        self.sys.strength(glue) >= self.tau() && !self.table.entries_for(Self::only(side, glue)).is_empty()
    }

    /// Glue probe slots of a WW side that does not grow a strength-τ probe.
    pub fn glue_probes(&self, side: Dir, glue: GlueId) -> BTreeSet<u16> {
        build_probe_table(&self.sys, self.glues(), side, glue)
            .map(|s| {
                s.into_iter()
                    .filter_map(|p| match p {
                        ProbeSlot::Glue(i) => Some(i),
                        ProbeSlot::Tau => None,
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Opposite WW sides with these glues have probes that meet.
    pub fn probes_meet(&self, side: Dir, glue: GlueId, opp_glue: GlueId) -> bool {
        let opp = side.opposite();
        match (self.tau_probe(side, glue), self.tau_probe(opp, opp_glue)) {
            (true, true) => true,
            (false, false) => {
                let a = self.glue_probes(side, glue);
                self.glue_probes(opp, opp_glue).iter().any(|s| a.contains(s))
            }
            _ => false,
        }
    }
}
