use atam_core::{Assembly, Pos, Tas, TileId};
use thiserror::Error;

use crate::block::{block_at, occupied_blocks, MBlock};

/// A partial map from m-blocks of simulator tiles to simulated tiles.
pub trait BlockRep {
    fn m(&self) -> u32;
    fn map(&self, b: &MBlock) -> Option<TileId>;
}

/// Scale-1 identity between a system and itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityRep;

impl BlockRep for IdentityRep {
    fn m(&self) -> u32 {
        1
    }

    fn map(&self, b: &MBlock) -> Option<TileId> {
        b.cells.get(&(0, 0)).copied()
    }
}

/// A finite rule list. With `monotone_closure`, a block maps to the tile of
/// the first rule whose block it contains; otherwise only exact matches map.
#[derive(Debug, Clone)]
pub struct ExtensionalRep {
    pub m: u32,
    pub rules: Vec<(MBlock, TileId)>,
    pub monotone_closure: bool,
}

impl BlockRep for ExtensionalRep {
    fn m(&self) -> u32 {
        self.m
    }

    fn map(&self, b: &MBlock) -> Option<TileId> {
        self.rules.iter().find_map(|(rule, t)| {
            let hit = if self.monotone_closure { rule.is_subblock_of(b) } else { rule == b };
            hit.then_some(*t)
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// Reads a rule file:
///
/// ```text
/// m 2
/// closure on
/// rule <simulated-tile> <i>,<j>=<simulator-tile> ...
/// ```
pub fn parse_rep(text: &str, simulator: &Tas, simulated: &Tas) -> Result<ExtensionalRep, RepError> {
    let err = |line, msg: String| RepError::Syntax { line, msg };
    let mut m = None;
    let mut closure = true;
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut toks = content.split_whitespace();
        match toks.next() {
            None => continue,
            Some("m") => {
                let v: u32 = toks
                    .next()
                    .and_then(|s| s.parse().ok())
                    .filter(|v| *v > 0)
                    .ok_or_else(|| err(line, "bad m".into()))?;
                m = Some(v);
            }
            Some("closure") => {
                closure = match toks.next() {
                    Some("on") => true,
                    Some("off") => false,
                    other => return Err(err(line, format!("bad closure flag {other:?}"))),
                };
            }
            Some("rule") => {
                let m = m.ok_or_else(|| err(line, "rule before m".into()))?;
                let name = toks.next().ok_or_else(|| err(line, "missing tile".into()))?;
                let target = simulated
                    .tile_by_name(name)
                    .ok_or_else(|| err(line, format!("unknown simulated tile {name:?}")))?;
                let mut block = MBlock::empty(m);
                for cell in toks.by_ref() {
                    let parsed = cell.split_once('=').and_then(|(ij, tile)| {
                        let (i, j) = ij.split_once(',')?;
                        Some((i.parse::<u32>().ok()?, j.parse::<u32>().ok()?, tile))
                    });
                    let (i, j, tile) = parsed.ok_or_else(|| err(line, format!("bad cell {cell:?}")))?;
                    if i >= m || j >= m {
                        return Err(err(line, format!("cell {i},{j} outside the block")));
                    }
                    let t = simulator
                        .tile_by_name(tile)
                        .ok_or_else(|| err(line, format!("unknown simulator tile {tile:?}")))?;
                    block.cells.insert((i, j), t);
                }
                rules.push((block, target));
            }
            Some(other) => return Err(err(line, format!("unknown keyword {other:?}"))),
        }
    }
    let m = m.ok_or_else(|| err(0, "missing m".into()))?;
    Ok(ExtensionalRep { m, rules, monotone_closure: closure })
}

/// Monotonicity over a finite universe: whenever a mapped block is contained
/// in another block, both map to the same tile.
pub fn validate_rep(rep: &dyn BlockRep, universe: &[MBlock]) -> bool {
    let mapped: Vec<(&MBlock, TileId)> =
        universe.iter().filter_map(|b| rep.map(b).map(|t| (b, t))).collect();
    mapped.iter().all(|(small, t)| {
        universe
            .iter()
            .filter(|big| small.is_subblock_of(big))
            .all(|big| rep.map(big) == Some(*t))
    })
}

/// The blockwise image. Unmapped blocks stay undefined.
pub fn represent(rep: &dyn BlockRep, a: &Assembly) -> Assembly {
    let m = rep.m();
    occupied_blocks(a, m)
        .into_iter()
        .filter_map(|b| rep.map(&block_at(a, m, b.x, b.y)).map(|t| (b, t)))
        .collect()
}

/// Every nonempty unmapped block touches a mapped block, counting diagonal
/// neighbours; an assembly whose only nonempty block is at the origin also
/// passes.
pub fn maps_cleanly(rep: &dyn BlockRep, a: &Assembly) -> bool {
    let m = rep.m();
    let blocks = occupied_blocks(a, m);
    if blocks.is_empty() || blocks == [Pos::new(0, 0)] {
        return true;
    }
    let image = represent(rep, a);
    blocks.iter().all(|b| {
        image.contains(*b)
            || (-1..=1).any(|dx| (-1..=1).any(|dy| image.contains(Pos::new(b.x + dx, b.y + dy))))
    })
}
