use atam_core::{Dir, GlueId, Tas, TileId, TileType};

use crate::glue::{build_glue_table, Address, GlueTable, Quad};
use crate::TableError;

pub const DEFAULT_SLOT_CAP: u64 = 1 << 20;

/// Sum of the strengths of `tile`'s sides whose glue equals the address
/// glue on that side is at least `τ`. Mismatching sides are ignored.
pub fn validly_addresses(sys: &Tas, addr: &Quad, tile: &TileType) -> bool {
    let matched: u32 = Dir::ALL
        .iter()
        .filter(|d| addr[d.index()] == tile.glue(**d))
        .map(|d| sys.strength(tile.glue(*d)))
        .sum();
    matched >= sys.temperature
}

/// `15g⁴ − 32g³ + 24g² − 8g + 1`, i.e. `(2g−1)⁴ − g⁴`.
pub fn max_entries_formula(g: u64) -> u64 {
    15 * g.pow(4) + 24 * g.pow(2) + 1 - 32 * g.pow(3) - 8 * g
}

/// Brute force over the complete tile set on `g` glue indices (index 0 is
/// null). An address with `k` non-null glues is charged every tile that
/// carries all `k` of them. Returns `(largest count of one address, total)`
/// for each `k` in `0..=4`.
pub fn category_entries(g: u16) -> [(u64, u64); 5] {
    let mut out = [(0u64, 0u64); 5];
    let quads = || {
        (0..g).flat_map(move |n| {
            (0..g).flat_map(move |e| (0..g).flat_map(move |s| (0..g).map(move |w| [n, e, s, w])))
        })
    };
    for addr in quads() {
        let k = addr.iter().filter(|i| **i != 0).count();
        if k == 0 {
            continue;
        }
        let n = quads()
            .filter(|t| (0..4).all(|d| addr[d] == 0 || addr[d] == t[d]))
            .count() as u64;
        out[k].0 = out[k].0.max(n);
        out[k].1 += n;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TapeGeometry {
    pub len: usize,
    /// Offsets of every '#' cell, counts section first.
    pub hashes: Vec<usize>,
    pub dots: Vec<usize>,
    pub count_bits: usize,
    pub rng_region: (usize, usize),
    pub compute_state: (usize, usize),
}

/// Tile lookup table over the padded address space `[0, 2^(4L))`.
#[derive(Debug, Clone)]
pub struct LookupTable {
    glues: GlueTable,
    slots: Vec<Vec<TileId>>,
    tile_count: usize,
}

pub fn build_lookup_table(sys: &Tas) -> Result<LookupTable, TableError> {
    build_lookup_table_capped(sys, DEFAULT_SLOT_CAP)
}

pub fn build_lookup_table_capped(sys: &Tas, cap: u64) -> Result<LookupTable, TableError> {
    let glues = build_glue_table(sys);
    let n = glues.slot_count();
    if n > cap {
        return Err(TableError::TooLarge { slots: n, cap });
    }
    let mut tiles: Vec<(u64, TileId)> = sys
        .tile_ids()
        .map(|t| {
            let addr = glues.address_of(sys.tile(t).glues).expect("tile glue in table");
            (addr.slot(), t)
        })
        .collect();
    tiles.sort();
    let slots = (0..n)
        .map(|slot| {
            let addr = Address::from_slot(slot, glues.bits());
            match glues.address_to_quadruple(&addr) {
                Some(quad) => tiles
                    .iter()
                    .filter(|(_, t)| validly_addresses(sys, &quad, sys.tile(*t)))
                    .map(|(_, t)| *t)
                    .collect(),
                None => Vec::new(),
            }
        })
        .collect();
    Ok(LookupTable { glues, slots, tile_count: sys.tiles.len() })
}

impl LookupTable {
    pub fn glue_table(&self) -> &GlueTable {
        &self.glues
    }

    pub fn entries(&self, addr: &Address) -> &[TileId] {
        &self.slots[addr.slot() as usize]
    }

    pub fn count(&self, addr: &Address) -> usize {
        self.entries(addr).len()
    }

    /// Entries of the address for a partial quadruple. Glues outside the
    /// table never match a tile, so they are encoded as null.
    pub fn entries_for(&self, collected: [Option<GlueId>; 4]) -> &[TileId] {
        let idx = collected.map(|g| g.and_then(|g| self.glues.index_of(g).ok()).unwrap_or(0));
        let addr = Address::from_indices(idx, self.glues.bits());
        self.entries(&addr)
    }

    /// `(slot, entries)` for every slot, in slot order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &[TileId])> {
        self.slots.iter().enumerate().map(|(i, e)| (i as u64, e.as_slice()))
    }

    pub fn total_entries(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    fn count_bits(&self) -> usize {
        (usize::BITS - self.tile_count.leading_zeros()).max(1) as usize
    }

    /// Text tape: counts section, RNG region, entries section, compute-state
    /// region. Every information cell is followed by a '_' spacer.
    pub fn tape(&self, sys: &Tas) -> (String, TapeGeometry) {
        let mut out = String::new();
        let mut hashes = Vec::new();
        let mut dots = Vec::new();
        let push = |out: &mut String, c: char| {
            out.push(c);
            out.push('_');
        };
        let cb = self.count_bits();
        for e in &self.slots {
            hashes.push(out.len());
            push(&mut out, '#');
            for b in (0..cb).rev() {
                push(&mut out, if e.len() >> b & 1 == 1 { '1' } else { '0' });
            }
        }
        let bits = self.glues.bits() as usize;
        let rng_region = (out.len(), 2 * bits);
        out.extend(std::iter::repeat_n('_', 2 * bits));
        for e in &self.slots {
            hashes.push(out.len());
            push(&mut out, '#');
            for (i, t) in e.iter().enumerate() {
                if i > 0 {
                    dots.push(out.len());
                    push(&mut out, '.');
                }
                let addr = self.glues.address_of(sys.tile(*t).glues).expect("tile glue in table");
                for c in addr.hex().chars() {
                    push(&mut out, c);
                }
            }
        }
        let state = 2 * (4 * bits + cb);
        let compute_state = (out.len(), state);
        out.extend(std::iter::repeat_n('_', state));
        let len = out.len();
        (out, TapeGeometry { len, hashes, dots, count_bits: cb, rng_region, compute_state })
    }
}

/// Standard lookup: absent sides are null, `e = r mod n`.
pub fn lookup(
    table: &LookupTable,
    collected: [Option<GlueId>; 4],
    r: u64,
) -> Option<(TileId, usize)> {
    let entries = table.entries_for(collected);
    let n = entries.len();
    (n > 0).then(|| (entries[(r % n as u64) as usize], n))
}

/// Lookup on the collected glues plus a check of whether the pair on `side`
/// and its opposite, alone, validly addresses some tile.
pub fn dual_lookup(
    table: &LookupTable,
    collected: [Option<GlueId>; 4],
    side: Dir,
    r: u64,
) -> (Option<(TileId, usize)>, bool) {
    let mut pair = [None; 4];
    pair[side.index()] = collected[side.index()];
    pair[side.opposite().index()] = collected[side.opposite().index()];
    let opposite = pair[side.index()].is_some()
        && pair[side.opposite().index()].is_some()
        && !table.entries_for(pair).is_empty();
    (lookup(table, collected, r), opposite)
}
