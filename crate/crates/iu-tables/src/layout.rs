use atam_core::Tas;

use crate::lookup::{build_lookup_table, LookupTable};
use crate::probe::ProbeTable;
use crate::TableError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub name: &'static str,
    pub start: usize,
    pub len: usize,
}

/// Regions of one superside from its left end, plus the tables it encodes.
#[derive(Debug, Clone)]
pub struct SupersideLayout {
    pub regions: Vec<Region>,
    pub m: usize,
    pub lookup: LookupTable,
    pub probes: ProbeTable,
}

pub const FRAME_WIDTH: usize = 4;

pub fn superside_layout(sys: &Tas) -> Result<SupersideLayout, TableError> {
    let lookup = build_lookup_table(sys)?;
    let glues = lookup.glue_table();
    let probes = ProbeTable::new(glues, sys.tiles.len());
    let tape_len = lookup.tape(sys).1.len;
    let glue_len = 2 * glues.bits() as usize;
    let probe_len = probes.region_len();
    let table_len = probes.table_len(glues);
    let parts: [(&'static str, usize); 11] = [
        ("frame", FRAME_WIDTH),
        ("glue", glue_len),
        ("glue", glue_len),
        ("lookup", tape_len),
        ("blank", probe_len + table_len),
        ("probe-region", probe_len),
        ("probe-table", table_len),
        ("lookup", tape_len),
        ("glue", glue_len),
        ("glue", glue_len),
        ("frame", FRAME_WIDTH),
    ];
    let mut regions = Vec::new();
    let mut at = 0;
    for (name, len) in parts {
        regions.push(Region { name, start: at, len });
        at += len;
    }
    if at % 2 == 0 {
        regions.push(Region { name: "pad", start: at, len: 1 });
        at += 1;
    }
    Ok(SupersideLayout { regions, m: at, lookup, probes })
}

impl SupersideLayout {
    pub fn region(&self, name: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.name == name)
    }

    /// "name, start, length" lines.
    pub fn render(&self) -> String {
        self.regions
            .iter()
            .map(|r| format!("{}, {}, {}\n", r.name, r.start, r.len))
            .collect()
    }
}
