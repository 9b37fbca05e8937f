use std::collections::BTreeMap;

use crate::geom::{Dir, Pos};
use crate::parse::TasError;
use crate::stability::is_tau_stable;

/// Index of a glue within [`Tas::glues`]. Index 0 is always the null glue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlueId(pub u16);

impl GlueId {
    pub const NULL: GlueId = GlueId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a tile type within [`Tas::tiles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileId(pub u16);

impl TileId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Glue {
    pub label: String,
    pub strength: u32,
}

impl Glue {
    pub fn new(label: impl Into<String>, strength: u32) -> Self {
        Glue { label: label.into(), strength }
    }

    pub fn null() -> Self {
        Glue::new("null", 0)
    }

    pub fn is_null(&self) -> bool {
        self.label == "null"
    }
}

/// Glues are stored as `[north, east, south, west]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileType {
    pub name: String,
    pub glues: [GlueId; 4],
}

impl TileType {
    pub fn new(name: impl Into<String>, glues: [GlueId; 4]) -> Self {
        TileType { name: name.into(), glues }
    }

    pub fn glue(&self, d: Dir) -> GlueId {
        self.glues[d.index()]
    }
}

/// Anchored assembly: a partial map from positions to tile types.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly {
    tiles: BTreeMap<Pos, TileId>,
}

impl Assembly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(p: Pos, t: TileId) -> Self {
        let mut a = Self::new();
        a.insert(p, t);
        a
    }

    pub fn insert(&mut self, p: Pos, t: TileId) -> Option<TileId> {
        self.tiles.insert(p, t)
    }

    pub fn get(&self, p: Pos) -> Option<TileId> {
        self.tiles.get(&p).copied()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.tiles.contains_key(&p)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pos, TileId)> + '_ {
        self.tiles.iter().map(|(p, t)| (*p, *t))
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.keys().copied()
    }

    /// `self` is a subassembly of `other`: every placed tile agrees.
    pub fn is_subassembly_of(&self, other: &Assembly) -> bool {
        self.iter().all(|(p, t)| other.get(p) == Some(t))
    }

    /// Connected in the full grid graph (binding is not required).
    pub fn is_grid_connected(&self) -> bool {
        let Some(start) = self.positions().next() else {
            return false;
        };
        let mut seen = std::collections::BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            for (_, q) in p.neighbors() {
                if self.contains(q) && seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        seen.len() == self.len()
    }

    /// Empty positions adjacent to the assembly, ascending.
    pub fn perimeter(&self) -> Vec<Pos> {
        let mut out: Vec<Pos> = self
            .positions()
            .flat_map(|p| p.neighbors().map(|(_, q)| q))
            .filter(|q| !self.contains(*q))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl FromIterator<(Pos, TileId)> for Assembly {
    fn from_iter<I: IntoIterator<Item = (Pos, TileId)>>(iter: I) -> Self {
        Assembly { tiles: iter.into_iter().collect() }
    }
}

/// A tile assembly system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tas {
    pub temperature: u32,
    /// `glues[0]` is null.
    pub glues: Vec<Glue>,
    pub tiles: Vec<TileType>,
    pub seed: Assembly,
}

impl Tas {
    /// Validates and builds a system. `glues` must not contain null; it is
    /// inserted at index 0 and tile glue ids are taken relative to the result.
    pub fn new(
        temperature: u32,
        glues: Vec<Glue>,
        tiles: Vec<TileType>,
        seed: Assembly,
    ) -> Result<Tas, TasError> {
        if temperature == 0 {
            return Err(TasError::syntax(0, "temperature must be positive"));
        }
        let mut all = vec![Glue::null()];
        for g in glues {
            if g.is_null() {
                return Err(TasError::syntax(0, "null is reserved"));
            }
            if let Some(prev) = all.iter().find(|h| h.label == g.label) {
                if prev.strength != g.strength {
                    return Err(TasError::UnequalStrengths { line: 0, label: g.label });
                }
                continue;
            }
            if g.strength > temperature {
                return Err(TasError::StrengthAboveTemperature { line: 0, label: g.label });
            }
            all.push(g);
        }
        for (i, t) in tiles.iter().enumerate() {
            if t.glues.iter().any(|g| g.index() >= all.len()) {
                return Err(TasError::syntax(0, format!("tile {} uses an unknown glue", t.name)));
            }
            for u in &tiles[..i] {
                if u.name == t.name {
                    return Err(TasError::DuplicateTileName { line: 0, name: t.name.clone() });
                }
                if u.glues == t.glues {
                    return Err(TasError::DuplicateQuadruple { line: 0, name: t.name.clone() });
                }
            }
        }
        if seed.is_empty() {
            return Err(TasError::syntax(0, "empty seed"));
        }
        if seed.iter().any(|(_, t)| t.index() >= tiles.len()) {
            return Err(TasError::syntax(0, "seed uses an unknown tile"));
        }
        let sys = Tas { temperature, glues: all, tiles, seed };
        if !is_tau_stable(&sys, &sys.seed) {
            return Err(TasError::UnstableSeed { line: 0 });
        }
        Ok(sys)
    }

    pub fn glue(&self, g: GlueId) -> &Glue {
        &self.glues[g.index()]
    }

    pub fn strength(&self, g: GlueId) -> u32 {
        self.glues[g.index()].strength
    }

    pub fn tile(&self, t: TileId) -> &TileType {
        &self.tiles[t.index()]
    }

    pub fn tile_ids(&self) -> impl Iterator<Item = TileId> {
        (0..self.tiles.len() as u16).map(TileId)
    }

    pub fn tile_by_name(&self, name: &str) -> Option<TileId> {
        self.tiles.iter().position(|t| t.name == name).map(|i| TileId(i as u16))
    }

    pub fn glue_by_label(&self, label: &str) -> Option<GlueId> {
        self.glues.iter().position(|g| g.label == label).map(|i| GlueId(i as u16))
    }

    /// Strength with which two abutting glues interact.
    pub fn interaction(&self, a: GlueId, b: GlueId) -> u32 {
        if a == b {
            self.strength(a)
        } else {
            0
        }
    }
}
