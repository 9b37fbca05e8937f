use std::collections::HashMap;

use atam_core::{GlueId, Tas};

use crate::TableError;

/// Glue quadruple in `[north, east, south, west]` order.
pub type Quad = [GlueId; 4];

/// Ordered glue set: null first, then every glue used by a tile, by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueTable {
    order: Vec<GlueId>,
    index: HashMap<GlueId, u16>,
    bits: u32,
}

pub fn build_glue_table(sys: &Tas) -> GlueTable {
    let mut used: Vec<GlueId> = sys
        .tiles
        .iter()
        .flat_map(|t| t.glues)
        .filter(|g| *g != GlueId::NULL)
        .collect();
    used.sort_by(|a, b| sys.glue(*a).label.cmp(&sys.glue(*b).label));
    used.dedup();
    let mut order = vec![GlueId::NULL];
    order.extend(used);
    GlueTable::from_order(order)
}

impl GlueTable {
    pub(crate) fn from_order(order: Vec<GlueId>) -> Self {
        let index = order.iter().enumerate().map(|(i, g)| (*g, i as u16)).collect();
        let g = order.len() as u32;
        // ceil(log2 g), at least one bit
        let bits = (u32::BITS - (g.max(2) - 1).leading_zeros()).max(1);
        GlueTable { order, index, bits }
    }

    /// Number of glues including null.
    pub fn g(&self) -> usize {
        self.order.len()
    }

    /// Bits per glue code.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn glues(&self) -> &[GlueId] {
        &self.order
    }

    pub fn index_of(&self, glue: GlueId) -> Result<u16, TableError> {
        self.index.get(&glue).copied().ok_or(TableError::UnknownGlue(glue))
    }

    pub fn glue_at(&self, index: u16) -> Option<GlueId> {
        self.order.get(index as usize).copied()
    }

    /// MSB-first binary code of `glue`, as '0'/'1' characters.
    pub fn glue_bin(&self, glue: GlueId) -> Result<String, TableError> {
        let i = self.index_of(glue)?;
        Ok((0..self.bits).rev().map(|b| if i >> b & 1 == 1 { '1' } else { '0' }).collect())
    }

    pub fn address_of(&self, quad: Quad) -> Result<Address, TableError> {
        let idx = [
            self.index_of(quad[0])?,
            self.index_of(quad[1])?,
            self.index_of(quad[2])?,
            self.index_of(quad[3])?,
        ];
        Ok(Address::from_indices(idx, self.bits))
    }

    /// Inverse of [`address_of`](Self::address_of). `None` for padded slots
    /// that name a glue index outside the table.
    pub fn address_to_quadruple(&self, addr: &Address) -> Option<Quad> {
        let idx = addr.indices();
        let mut quad = [GlueId::NULL; 4];
        for (q, i) in quad.iter_mut().zip(idx) {
            *q = self.glue_at(i)?;
        }
        Some(quad)
    }

    /// Number of address slots, `2^(4L)`.
    pub fn slot_count(&self) -> u64 {
        1u64 << (4 * self.bits)
    }
}

/// Interleaved address: digit `i` holds bit `i` (MSB first) of the north,
/// east, south and west glue codes, north in the high bit of the nibble.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address {
    digits: Vec<u8>,
}

impl Address {
    pub fn from_indices(idx: [u16; 4], bits: u32) -> Self {
        let digits = (0..bits)
            .rev()
            .map(|b| {
                idx.iter()
                    .fold(0u8, |acc, i| (acc << 1) | ((i >> b) & 1) as u8)
            })
            .collect();
        Address { digits }
    }

    pub fn from_slot(slot: u64, bits: u32) -> Self {
        let digits = (0..bits).rev().map(|i| ((slot >> (4 * i)) & 0xf) as u8).collect();
        Address { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Slot number: the digits read as one base-16 integer.
    pub fn slot(&self) -> u64 {
        self.digits.iter().fold(0u64, |acc, d| (acc << 4) | *d as u64)
    }

    pub fn indices(&self) -> [u16; 4] {
        let mut idx = [0u16; 4];
        for d in &self.digits {
            for (k, i) in idx.iter_mut().enumerate() {
                *i = (*i << 1) | ((d >> (3 - k)) & 1) as u16;
            }
        }
        idx
    }

    pub fn hex(&self) -> String {
        self.digits.iter().map(|d| format!("{d:x}")).collect()
    }
}
