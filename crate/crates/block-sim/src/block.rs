use std::collections::BTreeMap;

use atam_core::{Assembly, Pos, TileId};

/// An m x m window of simulator tiles, indexed by `(i, j)` in `[0, m)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MBlock {
    pub m: u32,
    pub cells: BTreeMap<(u32, u32), TileId>,
}

impl MBlock {
    pub fn empty(m: u32) -> Self {
        MBlock { m, cells: BTreeMap::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Every cell of `self` is present in `other` with the same tile.
    pub fn is_subblock_of(&self, other: &MBlock) -> bool {
        self.m == other.m && self.cells.iter().all(|(k, t)| other.cells.get(k) == Some(t))
    }
}

/// Reads the block at supertile coordinates `(x, y)`: cell `(i, j)` holds
/// `a(m*x + i, m*y + j)`.
pub fn block_at(a: &Assembly, m: u32, x: i32, y: i32) -> MBlock {
    let mut b = MBlock::empty(m);
    for i in 0..m {
        for j in 0..m {
            let p = Pos::new(m as i32 * x + i as i32, m as i32 * y + j as i32);
            if let Some(t) = a.get(p) {
                b.cells.insert((i, j), t);
            }
        }
    }
    b
}

/// Supertile coordinates of every nonempty block.
pub(crate) fn occupied_blocks(a: &Assembly, m: u32) -> Vec<Pos> {
    let m = m as i32;
    let mut out: Vec<Pos> = a
        .positions()
        .map(|p| Pos::new(p.x.div_euclid(m), p.y.div_euclid(m)))
        .collect();
    out.sort();
    out.dedup();
    out
}
